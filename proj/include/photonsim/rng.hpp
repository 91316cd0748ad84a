#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace photonsim {

// Seeded random stream. The engine is mt19937_64; the uniform and normal
// variates are computed here rather than through <random> distributions so
// that sequences are identical across standard library implementations.
class Rng {
   public:
    explicit Rng(uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    uint64_t seed() const { return seed_; }

    uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Standard normal via Box-Muller; one variate per call.
    double normal() {
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Independent child stream derived from the seed, not from the current
    // engine position, so splitting is order independent.
    Rng split(uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL))); }

   private:
    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace photonsim
