#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "errors.hpp"
#include "rng.hpp"

namespace photonsim {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline double unitarity_residual(const CMatrix &u) {
    const auto m = u.rows();
    return (u * u.adjoint() - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
}

// m x m unitary transfer matrix. U(out, in) is the amplitude for a photon
// entering mode `in` to leave in mode `out`.
class Interferometer {
   public:
    static constexpr double kDefaultTolerance = 1e-9;

    explicit Interferometer(CMatrix matrix, double tolerance = kDefaultTolerance)
        : u_(std::move(matrix)), tolerance_(tolerance) {
        if (u_.rows() != u_.cols() || u_.rows() < 1) {
            throw ShapeError("interferometer matrix must be square and non-empty");
        }
        if (tolerance_ < 0) {
            throw DomainError("unitarity tolerance must be non-negative");
        }
        double r = unitarity_residual(u_);
        if (!(r <= tolerance_)) {
            throw NumericalError("matrix is not unitary: max |UU^dag - I| = " + std::to_string(r));
        }
    }

    static Interferometer identity(int modes) { return Interferometer(CMatrix::Identity(modes, modes)); }

    // Balanced beamsplitter between modes a and b: 1/sqrt2 on the diagonal,
    // i/sqrt2 off the diagonal.
    static Interferometer beamsplitter(int modes = 2, int a = 0, int b = 1) {
        CMatrix u = CMatrix::Identity(modes, modes);
        const double s = 1.0 / std::sqrt(2.0);
        u(a, a) = s;
        u(b, b) = s;
        u(a, b) = cdouble(0, s);
        u(b, a) = cdouble(0, s);
        return Interferometer(u);
    }

    int modes() const { return static_cast<int>(u_.rows()); }
    const CMatrix &matrix() const { return u_; }
    double tolerance() const { return tolerance_; }
    cdouble operator()(int out, int in) const { return u_(out, in); }

    // Run this interferometer, then `next`.
    Interferometer then(const Interferometer &next) const {
        if (next.modes() != modes()) {
            throw ShapeError("cannot chain interferometers of different size");
        }
        return Interferometer(next.u_ * u_, std::max(tolerance_, next.tolerance_));
    }

   private:
    CMatrix u_;
    double tolerance_;
};

// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
// R's diagonal moved into Q. Entries are drawn row by row.
inline Interferometer haar_random_unitary(int modes, Rng &rng) {
    if (modes < 1) {
        throw DomainError("haar_random_unitary needs m >= 1");
    }
    CMatrix z(modes, modes);
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < modes; i++) {
        for (int j = 0; j < modes; j++) {
            double re = rng.normal();
            double im = rng.normal();
            z(i, j) = cdouble(re * s, im * s);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(modes, modes);
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < modes; j++) {
        cdouble d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= (a > 0) ? d / a : cdouble(1);
    }
    return Interferometer(q);
}

inline Interferometer haar_random_unitary(int modes, uint64_t seed) {
    Rng rng(seed);
    return haar_random_unitary(modes, rng);
}

}  // namespace photonsim
