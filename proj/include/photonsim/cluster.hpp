#pragma once

#include <cmath>
#include <vector>

#include "qubits.hpp"
#include "rng.hpp"

namespace photonsim {

struct ClusterNoise {
    double photon_loss = 0;          // probability that an emitted photon is lost
    double spin_dephasing_rate = 0;  // gamma * interval per emission cycle, dimensionless
    double photon_dephasing = 0;     // probability of a Z error on each emitted photon
    double rotation_error = 0;       // standard deviation of the spin rotation angle, rad

    bool noiseless() const { return spin_dephasing_rate == 0 && photon_dephasing == 0 && rotation_error == 0; }

    void validate() const {
        if (!(photon_loss >= 0 && photon_loss <= 1)) {
            throw DomainError("photon_loss must lie in [0, 1]");
        }
        if (!(photon_dephasing >= 0 && photon_dephasing <= 1)) {
            throw DomainError("photon_dephasing must lie in [0, 1]");
        }
        if (!(spin_dephasing_rate >= 0) || !std::isfinite(spin_dephasing_rate)) {
            throw DomainError("spin_dephasing_rate must be non-negative");
        }
        if (!(rotation_error >= 0) || !std::isfinite(rotation_error)) {
            throw DomainError("rotation_error must be non-negative");
        }
    }

    // Z-flip probability of the spin over one emission cycle.
    double spin_flip_probability() const { return (1 - std::exp(-spin_dephasing_rate)) / 2; }
};

struct ClusterOptions {
    bool keep_spin = false;  // false: spin measured out in X after the last photon
    int trajectories = 2000;
};

struct ClusterResult {
    DensityOperator state;
    StabilizerSet stabilizers;
    std::vector<double> expectations;
    double fidelity = 0;
    double per_photon_infidelity = 0;
    double success_probability = 1;  // all photons detected
    int trajectories = 0;
};

namespace detail {

// One run of the time-bin protocol. Qubits 0..n-1 are photons, qubit n the
// spin. Returns the density matrix averaged over the spin X outcome when
// the spin is measured out, so only the noise is sampled.
inline CMatrix cluster_trajectory(int n, const ClusterNoise &noise, const ClusterOptions &opt, Rng *rng) {
    std::vector<QubitKind> kinds(static_cast<size_t>(n), QubitKind::photon_timebin);
    kinds.push_back(QubitKind::spin);
    auto psi = QubitStateVector::zeros(kinds);
    const int spin = n;
    psi.apply(gates::H(), spin);
    const double p_spin = noise.spin_flip_probability();
    for (int j = 0; j < n; j++) {
        // Fixed draw order keeps common random numbers across noise levels.
        double u_spin = rng ? rng->uniform() : 1.0;
        double u_photon = rng ? rng->uniform() : 1.0;
        double g = rng ? rng->normal() : 0.0;
        if (u_spin < p_spin) {
            psi.apply(gates::Z(), spin);
        }
        // Early emission, spin pi-flip, late emission: X_spin CNOT(spin -> photon).
        psi.apply_cnot(spin, j);
        psi.apply(gates::X(), spin);
        if (u_photon < noise.photon_dephasing) {
            psi.apply(gates::Z(), j);
        }
        // Ry(-pi/2) X = H, so the cycle nets H_spin CNOT. Skipped after the
        // last photon when the spin is measured out.
        if (j + 1 < n || opt.keep_spin) {
            psi.apply(gates::Ry(-M_PI / 2 + noise.rotation_error * g), spin);
        }
    }
    if (opt.keep_spin) {
        return psi.amplitudes() * psi.amplitudes().adjoint();
    }
    // Measure the spin in X: rotate with H, read Z. Outcome 1 ("-") needs Z
    // on the last photon.
    psi.apply(gates::H(), spin);
    const Eigen::Index dim = Eigen::Index{1} << n;
    CMatrix rho = CMatrix::Zero(dim, dim);
    for (int outcome = 0; outcome < 2; outcome++) {
        QubitStateVector branch = psi;
        double p = branch.measure_z_and_remove(spin, outcome);
        if (p == 0) {
            continue;
        }
        if (outcome == 1) {
            branch.apply(gates::Z(), n - 1);
        }
        rho += p * branch.amplitudes() * branch.amplitudes().adjoint();
    }
    return rho;
}

}  // namespace detail

// Deterministic time-bin cluster protocol. Noise is averaged over
// trajectories; photon loss is a heralded failure and only sets the
// success probability.
inline ClusterResult timebin_cluster(int n_photons, const ClusterNoise &noise, Rng &rng,
                                     const ClusterOptions &opt = {}, const Caps &caps = default_caps()) {
    noise.validate();
    if (n_photons < 1) {
        throw DomainError("cluster needs at least one photon");
    }
    check_cap(n_photons + 1, caps.max_qubits, "qubit count (photons + spin)", "PHOTONSIM_MAX_QUBITS");
    if (opt.trajectories < 1) {
        throw DomainError("trajectory count must be positive");
    }
    const int k = opt.keep_spin ? n_photons + 1 : n_photons;
    const Eigen::Index dim = Eigen::Index{1} << k;
    CMatrix acc = CMatrix::Zero(dim, dim);
    int runs = 1;
    if (noise.noiseless()) {
        acc = detail::cluster_trajectory(n_photons, noise, opt, nullptr);
    } else {
        runs = opt.trajectories;
        Rng base(rng.next_u64());
        for (int t = 0; t < runs; t++) {
            Rng r = base.split(static_cast<uint64_t>(t));
            acc += detail::cluster_trajectory(n_photons, noise, opt, &r);
        }
        acc /= static_cast<double>(runs);
    }
    acc = (acc + acc.adjoint()).eval() / 2.0;

    ClusterResult res{DensityOperator(acc), StabilizerSet::linear_cluster(k), {}, 0, 0, 1, runs};
    res.expectations = stabilizer_expectations(res.state, res.stabilizers);
    res.fidelity = std::clamp(state_fidelity(res.state, linear_cluster_state(k)), 0.0, 1.0);
    res.per_photon_infidelity = 1 - std::pow(res.fidelity, 1.0 / n_photons);
    res.success_probability = std::pow(1 - noise.photon_loss, n_photons);
    return res;
}

}  // namespace photonsim
