#pragma once

#include <cmath>
#include <complex>

#include "qubits.hpp"

namespace photonsim {

inline constexpr double kHbarMicroEvSeconds = 6.582119569e-10;

struct BiexcitonParams {
    double fine_structure_splitting = 0;  // S, micro-eV
    double exciton_lifetime = 1e-9;       // tau, s
    double window = 0;                    // detection gate after emission, s; 0 = ungated

    void validate() const {
        if (!(exciton_lifetime > 0)) {
            throw DomainError("exciton lifetime must be positive");
        }
        if (!(window >= 0)) {
            throw DomainError("integration window must be non-negative");
        }
        if (!std::isfinite(fine_structure_splitting)) {
            throw DomainError("fine-structure splitting must be finite");
        }
    }
};

// <e^{i S t / hbar}> over the exponential emission-time distribution,
// optionally truncated to [0, window].
inline cdouble biexciton_coherence(const BiexcitonParams &p) {
    p.validate();
    const double x = p.fine_structure_splitting * p.exciton_lifetime / kHbarMicroEvSeconds;
    const cdouble z(1.0, -x);
    if (p.window == 0) {
        return 1.0 / z;
    }
    const double w = p.window / p.exciton_lifetime;
    return (1.0 - std::exp(-z * w)) / (z * (1.0 - std::exp(-w)));
}

// Cascade pair (|HH> + e^{i S t / hbar} |VV>) / sqrt2 averaged over the
// emission time t. Qubit 0 is the biexciton photon, H = |0>.
inline DensityOperator biexciton_bell(const BiexcitonParams &p) {
    const cdouble c = biexciton_coherence(p);
    CMatrix rho = CMatrix::Zero(4, 4);
    rho(0, 0) = 0.5;
    rho(3, 3) = 0.5;
    rho(3, 0) = 0.5 * c;
    rho(0, 3) = 0.5 * std::conj(c);
    return DensityOperator(rho);
}

// Concurrence of an X-shaped state with populations only on HH and VV.
inline double biexciton_concurrence(const BiexcitonParams &p) { return std::abs(biexciton_coherence(p)); }

}  // namespace photonsim
