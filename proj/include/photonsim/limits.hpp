#pragma once

#include <cstdlib>
#include <string>

#include "errors.hpp"

namespace photonsim {

// Size caps for the exponential-cost engines. Defaults can be overridden by
// environment variables, e.g. PHOTONSIM_MAX_PHOTONS=10.
struct Caps {
    int max_photons = 8;
    int max_modes = 16;
    int max_partial_photons = 6;
    int max_benchmark_photons = 5;
    int max_qubits = 12;

    static Caps from_env() {
        Caps c;
        read_env("PHOTONSIM_MAX_PHOTONS", c.max_photons);
        read_env("PHOTONSIM_MAX_MODES", c.max_modes);
        read_env("PHOTONSIM_MAX_PARTIAL_PHOTONS", c.max_partial_photons);
        read_env("PHOTONSIM_MAX_BENCHMARK_PHOTONS", c.max_benchmark_photons);
        read_env("PHOTONSIM_MAX_QUBITS", c.max_qubits);
        return c;
    }

   private:
    static void read_env(const char *name, int &slot) {
        const char *raw = std::getenv(name);
        if (raw == nullptr || *raw == '\0') {
            return;
        }
        char *end = nullptr;
        long v = std::strtol(raw, &end, 10);
        if (*end != '\0' || v < 0 || v > 1000) {
            throw DomainError(std::string(name) + " must be a non-negative integer, got '" + raw + "'");
        }
        slot = static_cast<int>(v);
    }
};

// Caps read once from the environment.
inline const Caps &default_caps() {
    static const Caps caps = Caps::from_env();
    return caps;
}

inline void check_cap(int value, int cap, const char *what, const char *env_name) {
    if (value > cap) {
        throw ResourceLimitError(std::string(what) + " = " + std::to_string(value) + " exceeds cap " +
                                 std::to_string(cap) + " (raise with " + env_name + ")");
    }
}

}  // namespace photonsim
