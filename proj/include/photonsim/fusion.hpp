#pragma once

#include <optional>
#include <vector>

#include "qubits.hpp"
#include "rng.hpp"

namespace photonsim {

enum class FusionKind { type1, type2 };

// Which qubits enter the fusion. Unset indices default to the last qubit of
// `a` and the first qubit of `b`, the natural sites for growing linear
// clusters. The Pauli frame after type-2 fusion uses the chain neighbours
// of the fused qubits (index -1/+1 within each input).
struct FusionSites {
    std::optional<int> qubit_a;
    std::optional<int> qubit_b;
};

struct FusionResult {
    bool success = false;
    int outcome = 0;  // detector pattern label, see fuse()
    double probability = 0;  // probability of this outcome
    QubitStateVector state;
};

namespace detail {

inline Eigen::Index bit_of(int k, int q) { return Eigen::Index{1} << (k - 1 - q); }

// Keeps the component with qubit p equal to qubit q, drops q.
inline CVector merge_even(const CVector &psi, int k, int p, int q) {
    CVector out = CVector::Zero(psi.size() / 2);
    const Eigen::Index bp = bit_of(k, p);
    const Eigen::Index bq = bit_of(k, q);
    const Eigen::Index low = bq - 1;
    for (Eigen::Index i = 0; i < psi.size(); i++) {
        if (static_cast<bool>(i & bp) != static_cast<bool>(i & bq)) {
            continue;
        }
        Eigen::Index j = ((i >> 1) & ~low) | (i & low);
        out(j) = psi(i);
    }
    return out;
}

inline void require_site(const QubitStateVector &s, int q, const char *which) {
    if (s.qubits() == 0) {
        throw DomainError(std::string("fusion input ") + which + " holds no qubits");
    }
    if (q < 0 || q >= s.qubits()) {
        throw ShapeError(std::string("fusion site of input ") + which + " is out of range");
    }
    if (!is_photonic(s.kind(q))) {
        throw DomainError(std::string("fusion site of input ") + which + " is not a photonic qubit");
    }
}

inline QubitStateVector tensor(const QubitStateVector &a, const QubitStateVector &b) {
    CVector v(a.amplitudes().size() * b.amplitudes().size());
    for (Eigen::Index i = 0; i < a.amplitudes().size(); i++) {
        v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
    }
    auto kinds = a.kinds();
    kinds.insert(kinds.end(), b.kinds().begin(), b.kinds().end());
    Caps loose = default_caps();
    loose.max_qubits = std::max(loose.max_qubits, static_cast<int>(kinds.size()));
    return QubitStateVector(v, kinds, loose);
}

inline QubitStateVector normalized(CVector v, std::vector<QubitKind> kinds) {
    v /= v.norm();
    return QubitStateVector(v, std::move(kinds));
}

}  // namespace detail

// Probabilistic linear-optical fusion of one photonic qubit of `a` with one
// of `b`. The output lists the qubits of `a`, then those of `b`.
//
// type1: rails a|1> and b|0> meet on a balanced beamsplitter and are
//   detected. One click (outcome 0 or 1 for the two detectors) merges the
//   pair into one qubit at the site of `a`; outcome 1 is returned after its
//   Z correction.
//   Zero clicks (outcome 2) or two photons (outcome 3) measure both qubits
//   in Z and remove them.
// type2: a Hadamard on the `b` site, then a linear-optical Bell
//   measurement. Psi+ (outcome 0) and Psi- (outcome 1) succeed and remove
//   both qubits, with Z corrections on the chain neighbours; the Phi
//   components (outcomes 2, 3 for |00>, |11>) fail as Z measurements.
inline FusionResult fuse(const QubitStateVector &a, const QubitStateVector &b, FusionKind kind, Rng &rng,
                         const FusionSites &sites = {}) {
    const int qa = sites.qubit_a.value_or(a.qubits() - 1);
    const int qb_local = sites.qubit_b.value_or(0);
    detail::require_site(a, qa, "a");
    detail::require_site(b, qb_local, "b");
    auto joint = detail::tensor(a, b);
    const int k = joint.qubits();
    const int qb = a.qubits() + qb_local;

    if (kind == FusionKind::type2) {
        joint.apply(gates::H(), qb);
    }
    const CVector &psi = joint.amplitudes();
    const Eigen::Index ba = detail::bit_of(k, qa);
    const Eigen::Index bb = detail::bit_of(k, qb);
    // Weights of |00>, |01>, |10>, |11> on the fused pair.
    double w[4] = {0, 0, 0, 0};
    for (Eigen::Index i = 0; i < psi.size(); i++) {
        w[((i & ba) ? 2 : 0) + ((i & bb) ? 1 : 0)] += std::norm(psi(i));
    }

    auto kinds_without = [&](std::initializer_list<int> drop) {
        std::vector<QubitKind> out;
        for (int q = 0; q < k; q++) {
            if (std::find(drop.begin(), drop.end(), q) == drop.end()) {
                out.push_back(joint.kind(q));
            }
        }
        return out;
    };
    auto measured_out = [&](int va, int vb) {
        QubitStateVector s = joint;
        s.measure_z_and_remove(qb, vb);
        s.measure_z_and_remove(qa, va);
        return s;
    };

    FusionResult res;
    const double x = rng.uniform();
    if (kind == FusionKind::type1) {
        const double even = w[0] + w[3];
        if (x < even) {
            res.success = true;
            res.outcome = x < even / 2 ? 0 : 1;
            res.probability = even / 2;
            CVector merged = detail::merge_even(psi, k, qa, qb);
            // Outcome 1 projects onto |00> - |11>; after its Z correction
            // both outcomes leave the same merged state.
            res.state = detail::normalized(merged, kinds_without({qb}));
        } else if (x < even + w[1]) {
            res.outcome = 2;
            res.probability = w[1];
            res.state = measured_out(0, 1);
        } else {
            res.outcome = 3;
            res.probability = w[2];
            res.state = measured_out(1, 0);
        }
        return res;
    }

    // Bell components of the pair: Psi+- from |01> +- |10>.
    CVector psi_plus = CVector::Zero(psi.size() / 4);
    CVector psi_minus = CVector::Zero(psi.size() / 4);
    {
        QubitStateVector s01 = joint;
        QubitStateVector s10 = joint;
        double p01 = s01.measure_z_and_remove(qb, 1);
        p01 *= s01.measure_z_and_remove(qa, 0);
        double p10 = s10.measure_z_and_remove(qb, 0);
        p10 *= s10.measure_z_and_remove(qa, 1);
        CVector v01 = s01.amplitudes() * std::sqrt(p01);
        CVector v10 = s10.amplitudes() * std::sqrt(p10);
        psi_plus = (v01 + v10) / std::sqrt(2.0);
        psi_minus = (v01 - v10) / std::sqrt(2.0);
    }
    const double pp = psi_plus.squaredNorm();
    const double pm = psi_minus.squaredNorm();
    auto remaining = kinds_without({qa, qb});
    // Chain neighbours of the fused sites, in output indexing.
    std::vector<int> nb_a;
    std::vector<int> nb_b;
    if (qa - 1 >= 0) {
        nb_a.push_back(qa - 1);
    }
    if (qa + 1 < a.qubits()) {
        nb_a.push_back(qa);
    }
    if (qb_local - 1 >= 0) {
        nb_b.push_back(a.qubits() - 1 + qb_local - 1);
    }
    if (qb_local + 1 < b.qubits()) {
        nb_b.push_back(a.qubits() - 1 + qb_local);
    }
    if (x < pp + pm) {
        res.success = true;
        const bool minus = x >= pp;
        res.outcome = minus ? 1 : 0;
        res.probability = minus ? pm : pp;
        if (remaining.empty()) {
            CVector one = CVector::Ones(1);
            res.state = QubitStateVector(one, {});
            return res;
        }
        auto s = detail::normalized(minus ? psi_minus : psi_plus, remaining);
        for (int q : nb_a) {
            s.apply(gates::Z(), q);
        }
        if (minus) {
            for (int q : nb_b) {
                s.apply(gates::Z(), q);
            }
        }
        res.state = s;
        return res;
    }
    const bool ones = x >= pp + pm + w[0];
    res.outcome = ones ? 3 : 2;
    res.probability = ones ? w[3] : w[0];
    if (remaining.empty()) {
        CVector one = CVector::Ones(1);
        res.state = QubitStateVector(one, {});
        return res;
    }
    res.state = ones ? measured_out(1, 1) : measured_out(0, 0);
    return res;
}

}  // namespace photonsim
