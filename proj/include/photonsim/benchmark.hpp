#pragma once

#include <cstdint>
#include <vector>

#include "distinguishability.hpp"

namespace photonsim {

enum class Reference { ideal, distinguishable };

struct BenchmarkResult {
    int photon_number = 0;
    double id_value = 0;
    double delta_to_ideal = 0;
    double delta_to_distinguishable = 0;
    uint64_t reference_unitary_seed = 0;
    int modes = 0;

    double delta(Reference r) const { return r == Reference::ideal ? delta_to_ideal : delta_to_distinguishable; }
};

struct BenchmarkOptions {
    int modes = 0;  // 0 selects m = N^2
    IdConvention convention = IdConvention::hom_visibility;
};

// Total-variation distance between the partially distinguishable sampler
// and both reference samplers, on a seeded Haar unitary with the photons in
// the first N modes.
inline BenchmarkResult delta_benchmark(double v, int photons, uint64_t unitary_seed, const BenchmarkOptions &opt = {},
                                       const Caps &caps = default_caps()) {
    if (!(v >= 0 && v <= 1)) {
        throw DomainError("V must lie in [0, 1]");
    }
    if (photons < 1) {
        throw DomainError("benchmark needs at least one photon");
    }
    check_cap(photons, caps.max_benchmark_photons, "benchmark photon number", "PHOTONSIM_MAX_BENCHMARK_PHOTONS");
    const int m = opt.modes > 0 ? opt.modes : photons * photons;
    if (m < photons) {
        throw DomainError("benchmark needs at least as many modes as photons");
    }
    Caps local = caps;
    local.max_modes = std::max(caps.max_modes, caps.max_benchmark_photons * caps.max_benchmark_photons);
    local.max_photons = std::max(caps.max_photons, caps.max_benchmark_photons);
    local.max_partial_photons = std::max(caps.max_partial_photons, caps.max_benchmark_photons);

    Rng rng(unitary_seed);
    auto u = haar_random_unitary(m, rng);
    auto input = FockState::first_modes(photons, m);
    auto real = partial_distribution(u, input, DistinguishabilityModel::uniform(v, photons, opt.convention), local);
    auto ideal = output_distribution(u, input, local);
    auto dist = distinguishable_distribution(u, input, local);

    BenchmarkResult r;
    r.photon_number = photons;
    r.id_value = v;
    r.reference_unitary_seed = unitary_seed;
    r.modes = m;
    r.delta_to_ideal = std::clamp(total_variation(real, ideal), 0.0, 1.0);
    r.delta_to_distinguishable = std::clamp(total_variation(real, dist), 0.0, 1.0);
    return r;
}

inline std::vector<BenchmarkResult> delta_curve(double v, const std::vector<int> &n_values,
                                                const std::vector<uint64_t> &seeds, const BenchmarkOptions &opt = {},
                                                const Caps &caps = default_caps()) {
    for (int n : n_values) {
        check_cap(n, caps.max_benchmark_photons, "benchmark photon number", "PHOTONSIM_MAX_BENCHMARK_PHOTONS");
    }
    std::vector<BenchmarkResult> out;
    for (int n : n_values) {
        for (uint64_t s : seeds) {
            out.push_back(delta_benchmark(v, n, s, opt, caps));
        }
    }
    return out;
}

}  // namespace photonsim
