#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "fock_state.hpp"
#include "interferometer.hpp"
#include "limits.hpp"
#include "permanent.hpp"
#include "rng.hpp"

namespace photonsim {

// Output pattern -> probability, iterated in ascending lexicographic order.
using ProbabilityMap = std::map<FockState, double>;

// Per-mode transmissivities; each photon in mode i survives with eta[i].
struct LossChannel {
    std::vector<double> eta;

    LossChannel() = default;
    explicit LossChannel(std::vector<double> transmissivities) : eta(std::move(transmissivities)) {
        for (double e : eta) {
            if (!(e >= 0 && e <= 1)) {
                throw DomainError("transmissivity must lie in [0, 1]");
            }
        }
    }
    static LossChannel uniform(double transmissivity, int modes) {
        return LossChannel(std::vector<double>(static_cast<size_t>(modes), transmissivity));
    }
    int modes() const { return static_cast<int>(eta.size()); }
};

// U restricted to rows = output photon modes, cols = input photon modes,
// repeated per occupation.
inline CMatrix photon_submatrix(const CMatrix &u, const FockState &input, const FockState &output) {
    auto cols = input.photon_modes();
    auto rows = output.photon_modes();
    CMatrix s(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (size_t r = 0; r < rows.size(); r++) {
        for (size_t c = 0; c < cols.size(); c++) {
            s(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = u(rows[r], cols[c]);
        }
    }
    return s;
}

inline void check_modes(const Interferometer &u, const FockState &s) {
    if (s.modes() != u.modes()) {
        throw ShapeError("state has " + std::to_string(s.modes()) + " modes, interferometer has " +
                         std::to_string(u.modes()));
    }
}

inline void check_engine_caps(int photons, int modes, const Caps &caps) {
    check_cap(photons, caps.max_photons, "photon number", "PHOTONSIM_MAX_PHOTONS");
    check_cap(modes, caps.max_modes, "mode count", "PHOTONSIM_MAX_MODES");
}

// <output| U |input> = Perm(U_sub) / sqrt(prod in! prod out!).
inline cdouble transition_amplitude(const Interferometer &u, const FockState &input, const FockState &output) {
    check_modes(u, input);
    check_modes(u, output);
    if (input.photons() != output.photons()) {
        throw DomainError("photon number differs between input and output");
    }
    cdouble perm = permanent(photon_submatrix(u.matrix(), input, output));
    return perm / std::sqrt(input.factorial_product() * output.factorial_product());
}

// Probabilities of every output pattern in fock_basis order.
inline std::vector<double> output_probabilities(const Interferometer &u, const FockState &input,
                                                const std::vector<FockState> &basis) {
    std::vector<double> p(basis.size());
    const double in_norm = input.factorial_product();
    for (size_t i = 0; i < basis.size(); i++) {
        cdouble perm = permanent(photon_submatrix(u.matrix(), input, basis[i]));
        p[i] = std::norm(perm) / (in_norm * basis[i].factorial_product());
    }
    return p;
}

inline ProbabilityMap output_distribution(const Interferometer &u, const FockState &input,
                                          const Caps &caps = default_caps()) {
    check_modes(u, input);
    check_engine_caps(input.photons(), u.modes(), caps);
    auto basis = fock_basis(input.photons(), u.modes());
    auto p = output_probabilities(u, input, basis);
    ProbabilityMap out;
    for (size_t i = 0; i < basis.size(); i++) {
        out.emplace_hint(out.end(), basis[i], p[i]);
    }
    return out;
}

// Inverse-CDF sampling over the exact distribution; one uniform per draw.
inline std::vector<FockState> sample_outputs(const Interferometer &u, const FockState &input, Rng &rng,
                                             size_t count, const Caps &caps = default_caps()) {
    check_modes(u, input);
    check_engine_caps(input.photons(), u.modes(), caps);
    auto basis = fock_basis(input.photons(), u.modes());
    auto p = output_probabilities(u, input, basis);
    std::vector<double> cdf(p.size());
    double acc = 0;
    for (size_t i = 0; i < p.size(); i++) {
        acc += p[i];
        cdf[i] = acc;
    }
    std::vector<FockState> out;
    out.reserve(count);
    for (size_t s = 0; s < count; s++) {
        double x = rng.uniform() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
        size_t idx = std::min(static_cast<size_t>(it - cdf.begin()), cdf.size() - 1);
        out.push_back(basis[idx]);
    }
    return out;
}

// Binomial thinning of every mode; patterns with fewer photons appear.
inline ProbabilityMap apply_loss(const ProbabilityMap &dist, const LossChannel &loss) {
    ProbabilityMap out;
    for (const auto &[state, prob] : dist) {
        if (state.modes() != loss.modes()) {
            throw ShapeError("loss channel and distribution have different mode counts");
        }
        std::vector<int> kept(static_cast<size_t>(state.modes()), 0);
        auto rec = [&](auto &self, int mode, double weight) -> void {
            if (weight == 0) {
                return;
            }
            if (mode == state.modes()) {
                out[FockState(kept)] += weight;
                return;
            }
            const int n = state[mode];
            const double eta = loss.eta[static_cast<size_t>(mode)];
            double binom = 1;
            for (int k = 0; k <= n; k++) {
                if (k > 0) {
                    binom = binom * (n - k + 1) / k;
                }
                kept[static_cast<size_t>(mode)] = k;
                self(self, mode + 1, weight * binom * std::pow(eta, k) * std::pow(1 - eta, n - k));
            }
            kept[static_cast<size_t>(mode)] = 0;
        };
        rec(rec, 0, prob);
    }
    return out;
}

inline double total_probability(const ProbabilityMap &dist) {
    double s = 0;
    for (const auto &kv : dist) {
        s += kv.second;
    }
    return s;
}

// Total-variation distance; missing keys count as zero.
inline double total_variation(const ProbabilityMap &p, const ProbabilityMap &q) {
    double d = 0;
    auto a = p.begin();
    auto b = q.begin();
    while (a != p.end() || b != q.end()) {
        if (b == q.end() || (a != p.end() && a->first < b->first)) {
            d += std::abs(a->second);
            ++a;
        } else if (a == p.end() || b->first < a->first) {
            d += std::abs(b->second);
            ++b;
        } else {
            d += std::abs(a->second - b->second);
            ++a;
            ++b;
        }
    }
    return 0.5 * d;
}

}  // namespace photonsim
