#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fock_engine.hpp"

namespace photonsim {

// How the scalar V of uniform(V, N) maps to the pairwise overlap.
enum class IdConvention {
    hom_visibility,  // V = |<phi_i|phi_j>|^2, overlap = sqrt(V)
    overlap,         // V = <phi_i|phi_j> directly
};

// Gram matrix G(i, j) = <phi_i|phi_j> of the photons' internal states, in
// the order of FockState::photon_modes() of the input.
class DistinguishabilityModel {
   public:
    static constexpr double kTolerance = 1e-9;

    explicit DistinguishabilityModel(CMatrix gram) : gram_(std::move(gram)) {
        if (gram_.rows() != gram_.cols()) {
            throw ShapeError("Gram matrix must be square");
        }
        const auto n = gram_.rows();
        for (Eigen::Index i = 0; i < n; i++) {
            if (std::abs(gram_(i, i) - 1.0) > kTolerance) {
                throw DomainError("Gram matrix needs a unit diagonal");
            }
        }
        if (n == 0) {
            return;
        }
        if ((gram_ - gram_.adjoint()).cwiseAbs().maxCoeff() > kTolerance) {
            throw DomainError("Gram matrix must be Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> es(gram_, Eigen::EigenvaluesOnly);
        double smallest = es.eigenvalues().minCoeff();
        if (smallest < -kTolerance) {
            throw DomainError("Gram matrix is not positive semidefinite (eigenvalue " + std::to_string(smallest) +
                              ")");
        }
    }

    static DistinguishabilityModel uniform(double v, int photons,
                                           IdConvention convention = IdConvention::hom_visibility) {
        if (!(v >= 0 && v <= 1)) {
            throw DomainError("indistinguishability must lie in [0, 1]");
        }
        if (photons < 0) {
            throw DomainError("photon number must be non-negative");
        }
        double c = convention == IdConvention::hom_visibility ? std::sqrt(v) : v;
        CMatrix g = CMatrix::Constant(photons, photons, c);
        g.diagonal().setOnes();
        return DistinguishabilityModel(g);
    }

    static DistinguishabilityModel ideal(int photons) { return uniform(1, photons); }
    static DistinguishabilityModel distinguishable(int photons) { return uniform(0, photons); }

    int photons() const { return static_cast<int>(gram_.rows()); }
    const CMatrix &gram() const { return gram_; }

    // True when every off-diagonal overlap equals one real c >= 0.
    bool uniform_overlap(double &c) const {
        const auto n = gram_.rows();
        c = n > 1 ? gram_(0, 1).real() : 1.0;
        if (c < 0) {
            return false;
        }
        for (Eigen::Index i = 0; i < n; i++) {
            for (Eigen::Index j = 0; j < n; j++) {
                if (i != j && std::abs(gram_(i, j) - c) > 1e-15) {
                    return false;
                }
            }
        }
        return true;
    }

    // Internal-state model restricted to a subset of photons.
    DistinguishabilityModel subset(const std::vector<int> &photons) const {
        CMatrix g(static_cast<Eigen::Index>(photons.size()), static_cast<Eigen::Index>(photons.size()));
        for (size_t a = 0; a < photons.size(); a++) {
            for (size_t b = 0; b < photons.size(); b++) {
                g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = gram_(photons[a], photons[b]);
            }
        }
        return DistinguishabilityModel(g);
    }

   private:
    CMatrix gram_;
};

// Coincidence probability of two photons with pairwise HOM visibility V on
// a balanced beamsplitter.
inline double hom_coincidence(double v) {
    if (!(v >= 0 && v <= 1)) {
        throw DomainError("V must lie in [0, 1]");
    }
    return (1 - v) / 2;
}

namespace detail {

inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Unnormalized matrix element between two external row assignments.
// rows_a[p] and rows_b[p] are the modes holding photon slot p in the bra
// and ket patterns; slots are traced pairwise over internal states:
//   sum_sigma prod_j G(sigma(j), j) perm(M_a o conj(M_b[:, sigma]))
inline cdouble gram_weighted_element(const CMatrix &u, const std::vector<int> &rows_a, const std::vector<int> &rows_b,
                                     const std::vector<int> &cols, const CMatrix &gram,
                                     const std::vector<std::vector<int>> &perms) {
    const auto n = static_cast<Eigen::Index>(cols.size());
    CMatrix ma(n, n);
    CMatrix mb(n, n);
    for (Eigen::Index p = 0; p < n; p++) {
        for (Eigen::Index j = 0; j < n; j++) {
            ma(p, j) = u(rows_a[static_cast<size_t>(p)], cols[static_cast<size_t>(j)]);
            mb(p, j) = std::conj(u(rows_b[static_cast<size_t>(p)], cols[static_cast<size_t>(j)]));
        }
    }
    cdouble total = 0;
    CMatrix b(n, n);
    for (const auto &sigma : perms) {
        cdouble weight = 1;
        for (Eigen::Index j = 0; j < n && weight != 0.0; j++) {
            weight *= gram(sigma[static_cast<size_t>(j)], j);
        }
        if (weight == 0.0) {
            continue;
        }
        for (Eigen::Index j = 0; j < n; j++) {
            b.col(j) = ma.col(j).cwiseProduct(mb.col(sigma[static_cast<size_t>(j)]));
        }
        total += weight * permanent(b);
    }
    return total;
}

inline void require_single_occupancy(const FockState &input) {
    for (int k = 0; k < input.modes(); k++) {
        if (input[k] > 1) {
            throw DomainError("partial distinguishability needs at most one photon per input mode");
        }
    }
}

}  // namespace detail

// Distinguishable-particle probabilities: perm(|U_sub|^2) / prod out!.
inline ProbabilityMap distinguishable_distribution(const Interferometer &u, const FockState &input,
                                                   const Caps &caps = default_caps()) {
    check_modes(u, input);
    check_engine_caps(input.photons(), u.modes(), caps);
    Eigen::MatrixXd w = u.matrix().cwiseAbs2();
    ProbabilityMap out;
    for (const auto &o : fock_basis(input.photons(), u.modes())) {
        auto rows = o.photon_modes();
        auto cols = input.photon_modes();
        Eigen::MatrixXd s(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
        for (size_t r = 0; r < rows.size(); r++) {
            for (size_t c = 0; c < cols.size(); c++) {
                s(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = w(rows[r], cols[c]);
            }
        }
        out.emplace_hint(out.end(), o, permanent(s) / (input.factorial_product() * o.factorial_product()));
    }
    return out;
}

namespace detail {

// Uniform overlap c: each photon is in the shared internal state with
// amplitude sqrt(c), otherwise in a private orthogonal one. The output is
// a mixture over the set P of photons in private states: the others
// interfere ideally, the P photons scatter classically.
inline ProbabilityMap uniform_partial(const Interferometer &u, const FockState &input, double c) {
    const int n = input.photons();
    const int m = u.modes();
    const auto in_modes = input.photon_modes();
    const auto basis = fock_basis(n, m);
    std::vector<double> prob(basis.size(), 0.0);
    Eigen::MatrixXd w = u.matrix().cwiseAbs2();

    for (uint32_t mask = 0; mask < (1u << n); mask++) {
        const int bad = std::popcount(mask);
        const double weight = std::pow(c, n - bad) * std::pow(1 - c, bad);
        if (weight == 0) {
            continue;
        }
        std::vector<int> good_cols;
        std::vector<int> bad_cols;
        for (int j = 0; j < n; j++) {
            ((mask >> j) & 1u ? bad_cols : good_cols).push_back(in_modes[static_cast<size_t>(j)]);
        }
        for (size_t idx = 0; idx < basis.size(); idx++) {
            const auto &o = basis[idx];
            // Enumerate the sub-pattern t of o taken by the P photons.
            std::vector<int> t(static_cast<size_t>(m), 0);
            double acc = 0;
            auto rec = [&](auto &self, int mode, int left) -> void {
                if (mode == m) {
                    if (left != 0) {
                        return;
                    }
                    std::vector<int> rest(static_cast<size_t>(m));
                    double rest_fact = 1;
                    double t_fact = 1;
                    std::vector<int> rest_rows;
                    std::vector<int> t_rows;
                    for (int k = 0; k < m; k++) {
                        const int r = o[k] - t[static_cast<size_t>(k)];
                        for (int q = 0; q < r; q++) {
                            rest_rows.push_back(k);
                            rest_fact *= q + 1;
                        }
                        for (int q = 0; q < t[static_cast<size_t>(k)]; q++) {
                            t_rows.push_back(k);
                            t_fact *= q + 1;
                        }
                    }
                    const auto ng = static_cast<Eigen::Index>(good_cols.size());
                    const auto nb = static_cast<Eigen::Index>(bad_cols.size());
                    CMatrix g(ng, ng);
                    for (Eigen::Index r = 0; r < ng; r++) {
                        for (Eigen::Index q = 0; q < ng; q++) {
                            g(r, q) = u(rest_rows[static_cast<size_t>(r)], good_cols[static_cast<size_t>(q)]);
                        }
                    }
                    Eigen::MatrixXd b(nb, nb);
                    for (Eigen::Index r = 0; r < nb; r++) {
                        for (Eigen::Index q = 0; q < nb; q++) {
                            b(r, q) = w(t_rows[static_cast<size_t>(r)], bad_cols[static_cast<size_t>(q)]);
                        }
                    }
                    acc += std::norm(permanent(g)) / rest_fact * permanent(b) / t_fact;
                    return;
                }
                const int top = std::min(o[mode], left);
                for (int k = 0; k <= top; k++) {
                    t[static_cast<size_t>(mode)] = k;
                    self(self, mode + 1, left - k);
                }
                t[static_cast<size_t>(mode)] = 0;
            };
            rec(rec, 0, bad);
            prob[idx] += weight * acc;
        }
    }
    ProbabilityMap out;
    for (size_t i = 0; i < basis.size(); i++) {
        out.emplace_hint(out.end(), basis[i], prob[i]);
    }
    return out;
}

inline ProbabilityMap general_partial(const Interferometer &u, const FockState &input,
                                      const DistinguishabilityModel &model) {
    const auto cols = input.photon_modes();
    const auto perms = all_permutations(input.photons());
    ProbabilityMap out;
    for (const auto &o : fock_basis(input.photons(), u.modes())) {
        auto rows = o.photon_modes();
        cdouble v = gram_weighted_element(u.matrix(), rows, rows, cols, model.gram(), perms);
        out.emplace_hint(out.end(), o, v.real() / o.factorial_product());
    }
    return out;
}

}  // namespace detail

// Output distribution of photons with internal-state Gram matrix `model`.
// Uniform models use the mixture decomposition; other Gram matrices use
// the permutation-weighted permanent sum.
inline ProbabilityMap partial_distribution(const Interferometer &u, const FockState &input,
                                           const DistinguishabilityModel &model, const Caps &caps = default_caps()) {
    check_modes(u, input);
    if (model.photons() != input.photons()) {
        throw ShapeError("distinguishability model has " + std::to_string(model.photons()) + " photons, input has " +
                         std::to_string(input.photons()));
    }
    check_cap(input.photons(), caps.max_partial_photons, "photon number", "PHOTONSIM_MAX_PARTIAL_PHOTONS");
    check_cap(u.modes(), caps.max_modes, "mode count", "PHOTONSIM_MAX_MODES");
    detail::require_single_occupancy(input);
    double c = 0;
    if (model.uniform_overlap(c)) {
        return detail::uniform_partial(u, input, c);
    }
    return detail::general_partial(u, input, model);
}

}  // namespace photonsim
