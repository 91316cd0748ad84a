#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "interferometer.hpp"
#include "limits.hpp"

namespace photonsim {

enum class QubitKind { spin, photon_timebin, photon_polarization, photon_dualrail };

inline const char *kind_name(QubitKind k) {
    switch (k) {
        case QubitKind::spin:
            return "spin";
        case QubitKind::photon_timebin:
            return "photon-timebin";
        case QubitKind::photon_polarization:
            return "photon-polarization";
        case QubitKind::photon_dualrail:
            return "photon-dualrail";
    }
    return "?";
}

inline bool is_photonic(QubitKind k) { return k != QubitKind::spin; }

// Pure register of k qubits. Qubit 0 is the most significant bit of the
// basis index, so |q0 q1 ... q_{k-1}> has index sum q_i 2^(k-1-i).
class QubitStateVector {
   public:
    QubitStateVector() = default;

    QubitStateVector(CVector amplitudes, std::vector<QubitKind> kinds, const Caps &caps = default_caps())
        : amp_(std::move(amplitudes)), kinds_(std::move(kinds)) {
        const int k = static_cast<int>(kinds_.size());
        check_cap(k, caps.max_qubits, "qubit count", "PHOTONSIM_MAX_QUBITS");
        if (amp_.size() != (Eigen::Index{1} << k)) {
            throw ShapeError("amplitude vector length must be 2^k");
        }
        if (std::abs(amp_.norm() - 1.0) > 1e-9) {
            throw NumericalError("state vector is not normalized");
        }
    }

    // |0...0>.
    static QubitStateVector zeros(std::vector<QubitKind> kinds) {
        CVector a = CVector::Zero(Eigen::Index{1} << kinds.size());
        a(0) = 1;
        return QubitStateVector(a, std::move(kinds));
    }

    int qubits() const { return static_cast<int>(kinds_.size()); }
    const CVector &amplitudes() const { return amp_; }
    const std::vector<QubitKind> &kinds() const { return kinds_; }
    QubitKind kind(int q) const { return kinds_[static_cast<size_t>(q)]; }

    void apply(const Eigen::Matrix2cd &g, int q) {
        const Eigen::Index bit = Eigen::Index{1} << (qubits() - 1 - q);
        for (Eigen::Index i = 0; i < amp_.size(); i++) {
            if (i & bit) {
                continue;
            }
            cdouble a0 = amp_(i);
            cdouble a1 = amp_(i | bit);
            amp_(i) = g(0, 0) * a0 + g(0, 1) * a1;
            amp_(i | bit) = g(1, 0) * a0 + g(1, 1) * a1;
        }
    }

    void apply_cz(int a, int b) {
        const Eigen::Index ba = Eigen::Index{1} << (qubits() - 1 - a);
        const Eigen::Index bb = Eigen::Index{1} << (qubits() - 1 - b);
        for (Eigen::Index i = 0; i < amp_.size(); i++) {
            if ((i & ba) && (i & bb)) {
                amp_(i) = -amp_(i);
            }
        }
    }

    void apply_cnot(int control, int target) {
        const Eigen::Index bc = Eigen::Index{1} << (qubits() - 1 - control);
        const Eigen::Index bt = Eigen::Index{1} << (qubits() - 1 - target);
        for (Eigen::Index i = 0; i < amp_.size(); i++) {
            if ((i & bc) && !(i & bt)) {
                std::swap(amp_(i), amp_(i | bt));
            }
        }
    }

    // Appends a qubit in |0>.
    void add_qubit(QubitKind k) {
        CVector a = CVector::Zero(amp_.size() * 2);
        for (Eigen::Index i = 0; i < amp_.size(); i++) {
            a(2 * i) = amp_(i);
        }
        amp_ = std::move(a);
        kinds_.push_back(k);
    }

    // Projects qubit q on |outcome>, removes it and renormalizes. Returns the
    // probability of the outcome before projection.
    double measure_z_and_remove(int q, int outcome) {
        const int k = qubits();
        const Eigen::Index bit = Eigen::Index{1} << (k - 1 - q);
        const Eigen::Index low = bit - 1;
        CVector a(amp_.size() / 2);
        for (Eigen::Index j = 0; j < a.size(); j++) {
            Eigen::Index i = ((j & ~low) << 1) | (j & low) | (outcome ? bit : 0);
            a(j) = amp_(i);
        }
        double p = a.squaredNorm();
        if (p > 0) {
            a /= std::sqrt(p);
        }
        amp_ = std::move(a);
        kinds_.erase(kinds_.begin() + q);
        return p;
    }

   private:
    CVector amp_;
    std::vector<QubitKind> kinds_;
};

// Hermitian, unit-trace, positive-semidefinite 2^k x 2^k matrix.
class DensityOperator {
   public:
    static constexpr double kTolerance = 1e-9;

    DensityOperator() = default;

    explicit DensityOperator(CMatrix rho) : rho_(std::move(rho)) {
        if (rho_.rows() != rho_.cols() || rho_.rows() == 0 || (rho_.rows() & (rho_.rows() - 1)) != 0) {
            throw ShapeError("density operator must be 2^k x 2^k");
        }
        if (std::abs(rho_.trace() - 1.0) > kTolerance) {
            throw NumericalError("density operator trace is not 1");
        }
        if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kTolerance) {
            throw NumericalError("density operator is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -kTolerance) {
            throw NumericalError("density operator is not positive semidefinite");
        }
    }

    static DensityOperator pure(const QubitStateVector &s) {
        return DensityOperator(s.amplitudes() * s.amplitudes().adjoint());
    }

    const CMatrix &matrix() const { return rho_; }
    int qubits() const {
        int k = 0;
        while ((Eigen::Index{1} << k) < rho_.rows()) {
            k++;
        }
        return k;
    }
    double purity() const { return (rho_ * rho_).trace().real(); }

   private:
    CMatrix rho_;
};

// Signed Pauli string, e.g. "+ZXZ" or "-XX".
struct PauliString {
    int sign = 1;
    std::string ops;

    static PauliString parse(const std::string &text) {
        PauliString p;
        size_t i = 0;
        if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
            p.sign = text[0] == '-' ? -1 : 1;
            i = 1;
        }
        p.ops = text.substr(i);
        for (char c : p.ops) {
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                throw DomainError("bad Pauli string '" + text + "'");
            }
        }
        return p;
    }

    std::string str() const { return (sign < 0 ? "-" : "+") + ops; }

    bool commutes_with(const PauliString &o) const {
        if (o.ops.size() != ops.size()) {
            throw ShapeError("Pauli strings of different length");
        }
        int anti = 0;
        for (size_t i = 0; i < ops.size(); i++) {
            char a = ops[i];
            char b = o.ops[i];
            if (a != 'I' && b != 'I' && a != b) {
                anti++;
            }
        }
        return anti % 2 == 0;
    }
};

class StabilizerSet {
   public:
    StabilizerSet() = default;

    explicit StabilizerSet(std::vector<PauliString> gens) : gens_(std::move(gens)) {
        for (size_t i = 0; i < gens_.size(); i++) {
            if (gens_[i].ops.size() != gens_[0].ops.size()) {
                throw ShapeError("stabilizers act on different qubit counts");
            }
            for (size_t j = 0; j < i; j++) {
                if (!gens_[i].commutes_with(gens_[j])) {
                    throw DomainError("stabilizers " + gens_[i].str() + " and " + gens_[j].str() + " anticommute");
                }
            }
        }
    }

    // K_i = Z_{i-1} X_i Z_{i+1} on an open chain.
    static StabilizerSet linear_cluster(int n) {
        std::vector<PauliString> g;
        for (int i = 0; i < n; i++) {
            std::string s(static_cast<size_t>(n), 'I');
            s[static_cast<size_t>(i)] = 'X';
            if (i > 0) {
                s[static_cast<size_t>(i - 1)] = 'Z';
            }
            if (i + 1 < n) {
                s[static_cast<size_t>(i + 1)] = 'Z';
            }
            g.push_back({1, s});
        }
        return StabilizerSet(g);
    }

    // X...X and Z_i Z_{i+1}.
    static StabilizerSet ghz(int n) {
        std::vector<PauliString> g;
        g.push_back({1, std::string(static_cast<size_t>(n), 'X')});
        for (int i = 0; i + 1 < n; i++) {
            std::string s(static_cast<size_t>(n), 'I');
            s[static_cast<size_t>(i)] = 'Z';
            s[static_cast<size_t>(i + 1)] = 'Z';
            g.push_back({1, s});
        }
        return StabilizerSet(g);
    }

    const std::vector<PauliString> &generators() const { return gens_; }
    size_t size() const { return gens_.size(); }
    int qubits() const { return gens_.empty() ? 0 : static_cast<int>(gens_[0].ops.size()); }

   private:
    std::vector<PauliString> gens_;
};

namespace detail {

// P |psi> for a Pauli string, applied bitwise.
inline CVector apply_pauli(const PauliString &p, const CVector &psi) {
    const int k = static_cast<int>(p.ops.size());
    if (psi.size() != (Eigen::Index{1} << k)) {
        throw ShapeError("Pauli string length does not match the register");
    }
    Eigen::Index flip = 0;
    for (int q = 0; q < k; q++) {
        char c = p.ops[static_cast<size_t>(q)];
        if (c == 'X' || c == 'Y') {
            flip |= Eigen::Index{1} << (k - 1 - q);
        }
    }
    CVector out(psi.size());
    for (Eigen::Index i = 0; i < psi.size(); i++) {
        cdouble phase = static_cast<double>(p.sign);
        for (int q = 0; q < k; q++) {
            const bool bit = (i >> (k - 1 - q)) & 1;
            char c = p.ops[static_cast<size_t>(q)];
            if (c == 'Z' && bit) {
                phase = -phase;
            } else if (c == 'Y') {
                phase *= bit ? cdouble(0, -1) : cdouble(0, 1);
            }
        }
        out(i ^ flip) = phase * psi(i);
    }
    return out;
}

}  // namespace detail

inline std::vector<double> stabilizer_expectations(const QubitStateVector &state, const StabilizerSet &stabs) {
    if (stabs.size() > 0 && stabs.qubits() != state.qubits()) {
        throw ShapeError("stabilizer set and state act on different qubit counts");
    }
    std::vector<double> out;
    for (const auto &g : stabs.generators()) {
        out.push_back(state.amplitudes().dot(detail::apply_pauli(g, state.amplitudes())).real());
    }
    return out;
}

inline std::vector<double> stabilizer_expectations(const DensityOperator &rho, const StabilizerSet &stabs) {
    if (stabs.size() > 0 && stabs.qubits() != rho.qubits()) {
        throw ShapeError("stabilizer set and state act on different qubit counts");
    }
    std::vector<double> out;
    const CMatrix &m = rho.matrix();
    for (const auto &g : stabs.generators()) {
        // tr(P rho) = sum_j <e_j| P rho |e_j>, column by column.
        cdouble t = 0;
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            CVector pc = detail::apply_pauli(g, m.col(j));
            t += pc(j);
        }
        out.push_back(t.real());
    }
    return out;
}

inline double state_fidelity(const QubitStateVector &state, const QubitStateVector &target) {
    if (state.qubits() != target.qubits()) {
        throw ShapeError("states act on different qubit counts");
    }
    return std::norm(target.amplitudes().dot(state.amplitudes()));
}

inline double state_fidelity(const DensityOperator &rho, const QubitStateVector &target) {
    if (rho.qubits() != target.qubits()) {
        throw ShapeError("states act on different qubit counts");
    }
    const CVector &t = target.amplitudes();
    return t.dot(rho.matrix() * t).real();
}

namespace gates {

inline Eigen::Matrix2cd H() {
    const double s = 1 / std::sqrt(2.0);
    Eigen::Matrix2cd m;
    m << s, s, s, -s;
    return m;
}
inline Eigen::Matrix2cd X() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}
inline Eigen::Matrix2cd Z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}
inline Eigen::Matrix2cd Y() {
    Eigen::Matrix2cd m;
    m << 0, cdouble(0, -1), cdouble(0, 1), 0;
    return m;
}
// exp(-i angle Y / 2).
inline Eigen::Matrix2cd Ry(double angle) {
    Eigen::Matrix2cd m;
    m << std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2), std::cos(angle / 2);
    return m;
}

}  // namespace gates

inline QubitStateVector bell_phi_plus(QubitKind kind = QubitKind::photon_dualrail) {
    CVector a = CVector::Zero(4);
    a(0) = a(3) = 1 / std::sqrt(2.0);
    return QubitStateVector(a, {kind, kind});
}

inline QubitStateVector ghz_state(int n, QubitKind kind = QubitKind::photon_dualrail) {
    CVector a = CVector::Zero(Eigen::Index{1} << n);
    a(0) = a(a.size() - 1) = 1 / std::sqrt(2.0);
    return QubitStateVector(a, std::vector<QubitKind>(static_cast<size_t>(n), kind));
}

// Standard-form linear cluster: |+>^n followed by CZ on neighbours.
inline QubitStateVector linear_cluster_state(int n, QubitKind kind = QubitKind::photon_timebin) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    CVector a = CVector::Constant(dim, 1 / std::sqrt(static_cast<double>(dim)));
    QubitStateVector s(a, std::vector<QubitKind>(static_cast<size_t>(n), kind));
    for (int i = 0; i + 1 < n; i++) {
        s.apply_cz(i, i + 1);
    }
    return s;
}

}  // namespace photonsim
