#include <gtest/gtest.h>

#include <photonsim/emitter.hpp>

using namespace photonsim;

TEST(Emitter, RateFormula) {
    SourceModel src;
    // eta = 0.78 * 0.90 per photon, one attempt per N pulses.
    const double eta = 0.78 * 0.90;
    EXPECT_NEAR(n_photon_rate(src, DemuxPlan(1, 1.0)), 1e9 * eta, 1e-3);
    EXPECT_NEAR(n_photon_rate(src, DemuxPlan(1, 1.0)), 7.02e8, 1e-3);
    EXPECT_NEAR(n_photon_rate(src, DemuxPlan(4, 1.0)), 1e9 / 4 * std::pow(eta, 4), 1e-3);
    EXPECT_NEAR(n_photon_rate(src, DemuxPlan(4, 1.0)), 60713945.604, 1e-3);
    // Two switch layers for N = 4, three for N = 8.
    EXPECT_NEAR(per_photon_efficiency(src, DemuxPlan(8, 0.9)), eta * 0.729, 1e-15);
    EXPECT_NEAR(n_photon_rate(src, DemuxPlan(8, 0.9)), 1e9 / 8 * std::pow(eta * 0.729, 8), 1e-6);
}

TEST(Emitter, UnitEfficiencies) {
    SourceModel src;
    src.end_to_end_efficiency = 1.0;
    EXPECT_DOUBLE_EQ(n_photon_rate(src, DemuxPlan(2, 1.0, 1.0)), 5e8);
}

TEST(Emitter, RateCurveIsMonotone) {
    auto rows = rate_curve(SourceModel{}, {1.0, 0.95, 0.9}, {2, 4, 8});
    ASSERT_EQ(rows.size(), 9u);
    for (size_t i = 0; i < rows.size(); i++) {
        if (i % 3 != 0) {
            EXPECT_LT(rows[i].rate_hz, rows[i - 1].rate_hz);
        }
        if (i >= 3) {
            EXPECT_LT(rows[i].rate_hz, rows[i - 3].rate_hz);
        }
    }
}

TEST(Emitter, Validation) {
    EXPECT_THROW(DemuxPlan(3, 1.0), DomainError);
    EXPECT_THROW(DemuxPlan(0, 1.0), DomainError);
    EXPECT_THROW(DemuxPlan(2, 1.2), DomainError);
    SourceModel src;
    src.end_to_end_efficiency = 1.5;
    EXPECT_THROW(n_photon_rate(src, DemuxPlan(2, 1.0)), DomainError);
    SourceModel g;
    g.g2 = 3.0;
    g.end_to_end_efficiency = 1.0;
    EXPECT_THROW(detail::pulse_probabilities(g), DomainError);
    DemuxPlan plan(2, 1.0);
    plan.channel_efficiency = std::vector<double>{0.5};
    EXPECT_THROW(plan.validate(), ShapeError);
}

TEST(Emitter, PerChannelEfficiency) {
    SourceModel src;
    src.end_to_end_efficiency = 1.0;
    DemuxPlan plan(2, 0.5, 1.0);
    plan.channel_efficiency = std::vector<double>{1.0, 0.5};
    EXPECT_DOUBLE_EQ(n_photon_rate(src, plan), 5e8 * 0.5 * 0.25);
}

TEST(Emitter, MonteCarloMatchesAnalytic) {
    SourceModel src;
    for (int n : {2, 4}) {
        for (double t : {1.0, 0.9}) {
            DemuxPlan plan(n, t);
            Rng rng(100 + static_cast<uint64_t>(n));
            auto stats = simulate_coincidences(src, plan, 200000, rng);
            const double p = n_photon_rate(src, plan) * n / src.repetition_rate;
            const double se = std::sqrt(p * (1 - p) / 200000.0);
            EXPECT_NEAR(stats.fraction(), p, 3 * se) << n << " " << t;
        }
    }
}

TEST(Emitter, TrainAndDemultiplexAgreeWithStreaming) {
    SourceModel src;
    DemuxPlan plan(4, 0.95);
    Rng a(5);
    auto train = photon_train(src, 400000, a);
    auto routed = demultiplex(train, plan, a);
    const double p = n_photon_rate(src, plan) * 4 / src.repetition_rate;
    const double se = std::sqrt(p * (1 - p) / 100000.0);
    EXPECT_NEAR(coincidence_fraction(routed, 4), p, 4 * se);
    EXPECT_EQ(routed[5].channel, 1);
}

TEST(Emitter, MultiphotonPulsesFollowG2) {
    SourceModel src;
    src.g2 = 0.1;
    auto p = detail::pulse_probabilities(src);
    EXPECT_NEAR(p.p2, 0.1 * 0.78 * 0.78 / 2, 1e-15);
    // Mean photon number stays at the efficiency.
    EXPECT_NEAR(p.p1 + 2 * p.p2, 0.78, 1e-15);
    Rng rng(3);
    auto train = photon_train(src, 200000, rng);
    double mean = 0;
    for (const auto &e : train) {
        mean += e.photon_count;
    }
    EXPECT_NEAR(mean / 200000.0, 0.78, 0.005);
}
