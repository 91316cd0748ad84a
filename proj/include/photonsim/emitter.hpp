#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace photonsim {

// Emitter figures of merit. Defaults follow a 78% efficient source at 1 GHz.
struct SourceModel {
    double beta = 1.0;
    double end_to_end_efficiency = 0.78;
    double indistinguishability = 1.0;
    double g2 = 0.0;
    double repetition_rate = 1e9;  // Hz
    double spin_t2_star = 0.0;     // s
    double spin_t2 = 0.0;          // s
    double lifetime = 0.0;         // s

    void validate() const {
        auto prob = [](double x, const char *name) {
            if (!(x >= 0 && x <= 1)) {
                throw DomainError(std::string(name) + " must lie in [0, 1]");
            }
        };
        prob(beta, "beta");
        prob(end_to_end_efficiency, "end_to_end_efficiency");
        prob(indistinguishability, "indistinguishability");
        if (!(g2 >= 0)) {
            throw DomainError("g2 must be non-negative");
        }
        if (!(repetition_rate >= 0) || !(spin_t2_star >= 0) || !(spin_t2 >= 0) || !(lifetime >= 0)) {
            throw DomainError("rates and times must be non-negative");
        }
        if (spin_t2 < spin_t2_star) {
            throw DomainError("spin_t2 must be at least spin_t2_star");
        }
    }
};

// Balanced binary switch tree routing one source into N channels.
struct DemuxPlan {
    int channels = 1;
    double switch_transmission = 1.0;
    double external_efficiency = 0.90;
    // Optional per-channel replacement for external_efficiency.
    std::optional<std::vector<double>> channel_efficiency;

    DemuxPlan() = default;
    DemuxPlan(int n, double switch_t, double external = 0.90) : channels(n), switch_transmission(switch_t), external_efficiency(external) {
        validate();
    }

    int depth() const {
        int d = 0;
        while ((1 << d) < channels) {
            d++;
        }
        return d;
    }

    void validate() const {
        if (channels < 1 || (channels & (channels - 1)) != 0) {
            throw DomainError("channel count must be a power of two, got " + std::to_string(channels));
        }
        if (!(switch_transmission >= 0 && switch_transmission <= 1) ||
            !(external_efficiency >= 0 && external_efficiency <= 1)) {
            throw DomainError("transmissions must lie in [0, 1]");
        }
        if (channel_efficiency) {
            if (static_cast<int>(channel_efficiency->size()) != channels) {
                throw ShapeError("channel_efficiency needs one entry per channel");
            }
            for (double e : *channel_efficiency) {
                if (!(e >= 0 && e <= 1)) {
                    throw DomainError("channel efficiencies must lie in [0, 1]");
                }
            }
        }
    }

    // Survival probability after the source: coupling times switching.
    double channel_transmission(int channel) const {
        double ext = channel_efficiency ? (*channel_efficiency)[static_cast<size_t>(channel)] : external_efficiency;
        return ext * std::pow(switch_transmission, depth());
    }
};

struct PhotonEvent {
    int64_t pulse_index = 0;
    bool emitted = false;
    int channel = 0;
    int photon_count = 0;
};

// eta = source efficiency * external efficiency * switch^log2(N).
inline double per_photon_efficiency(const SourceModel &src, const DemuxPlan &plan) {
    src.validate();
    plan.validate();
    return src.end_to_end_efficiency * plan.channel_transmission(0);
}

// One N-photon attempt per N pulses: rate = (R / N) * prod_c eta_c.
inline double n_photon_rate(const SourceModel &src, const DemuxPlan &plan) {
    src.validate();
    plan.validate();
    double p = 1;
    for (int c = 0; c < plan.channels; c++) {
        p *= src.end_to_end_efficiency * plan.channel_transmission(c);
    }
    return src.repetition_rate / plan.channels * p;
}

struct RateRow {
    int channels = 0;
    double switch_transmission = 0;
    double rate_hz = 0;
};

inline std::vector<RateRow> rate_curve(const SourceModel &src, const std::vector<double> &switch_transmissions,
                                       const std::vector<int> &n_values, double external_efficiency = 0.90) {
    std::vector<RateRow> rows;
    for (int n : n_values) {
        for (double t : switch_transmissions) {
            DemuxPlan plan(n, t, external_efficiency);
            rows.push_back({n, t, n_photon_rate(src, plan)});
        }
    }
    return rows;
}

namespace detail {

struct PulseProbabilities {
    double p1 = 0;
    double p2 = 0;
};

// Two-photon truncation: p2 = g2 mu^2 / 2, p1 = mu - 2 p2.
inline PulseProbabilities pulse_probabilities(const SourceModel &src) {
    src.validate();
    const double mu = src.end_to_end_efficiency;
    PulseProbabilities p;
    p.p2 = src.g2 * mu * mu / 2;
    p.p1 = mu - 2 * p.p2;
    if (p.p1 < 0 || p.p1 + p.p2 > 1) {
        throw DomainError("g2 and efficiency give negative photon-number probabilities");
    }
    return p;
}

inline int draw_pulse(const PulseProbabilities &p, Rng &rng) {
    double x = rng.uniform();
    if (x < p.p2) {
        return 2;
    }
    if (x < p.p2 + p.p1) {
        return 1;
    }
    return 0;
}

inline int thin(int photons, double survive, Rng &rng) {
    int kept = 0;
    for (int k = 0; k < photons; k++) {
        kept += rng.bernoulli(survive) ? 1 : 0;
    }
    return kept;
}

}  // namespace detail

inline std::vector<PhotonEvent> photon_train(const SourceModel &src, int64_t pulses, Rng &rng) {
    if (pulses < 0) {
        throw DomainError("pulse count must be non-negative");
    }
    auto p = detail::pulse_probabilities(src);
    std::vector<PhotonEvent> out;
    out.reserve(static_cast<size_t>(pulses));
    for (int64_t i = 0; i < pulses; i++) {
        int n = detail::draw_pulse(p, rng);
        out.push_back({i, n > 0, 0, n});
    }
    return out;
}

// Pulse i goes to channel i mod N and each photon survives the switches and
// the channel coupling independently.
inline std::vector<PhotonEvent> demultiplex(const std::vector<PhotonEvent> &train, const DemuxPlan &plan, Rng &rng) {
    plan.validate();
    std::vector<PhotonEvent> out;
    out.reserve(train.size());
    for (const auto &e : train) {
        PhotonEvent r = e;
        r.channel = static_cast<int>(e.pulse_index % plan.channels);
        r.photon_count = detail::thin(e.photon_count, plan.channel_transmission(r.channel), rng);
        r.emitted = r.photon_count > 0;
        out.push_back(r);
    }
    return out;
}

// Fraction of complete blocks of N pulses where every channel fired.
inline double coincidence_fraction(const std::vector<PhotonEvent> &events, int channels) {
    const size_t blocks = events.size() / static_cast<size_t>(channels);
    if (blocks == 0) {
        return 0;
    }
    size_t hits = 0;
    for (size_t b = 0; b < blocks; b++) {
        bool all = true;
        for (int c = 0; c < channels; c++) {
            all = all && events[b * static_cast<size_t>(channels) + static_cast<size_t>(c)].photon_count > 0;
        }
        hits += all ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(blocks);
}

struct CoincidenceStats {
    int64_t blocks = 0;
    int64_t hits = 0;
    double fraction() const { return blocks ? static_cast<double>(hits) / static_cast<double>(blocks) : 0.0; }
};

// Same model as photon_train + demultiplex, streamed block by block so
// that large runs do not hold the event list.
inline CoincidenceStats simulate_coincidences(const SourceModel &src, const DemuxPlan &plan, int64_t blocks, Rng &rng) {
    plan.validate();
    auto p = detail::pulse_probabilities(src);
    CoincidenceStats s;
    s.blocks = blocks;
    for (int64_t b = 0; b < blocks; b++) {
        bool all = true;
        for (int c = 0; c < plan.channels; c++) {
            int n = detail::thin(detail::draw_pulse(p, rng), plan.channel_transmission(c), rng);
            all = all && n > 0;
        }
        s.hits += all ? 1 : 0;
    }
    return s;
}

}  // namespace photonsim
