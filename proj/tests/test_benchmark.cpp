#include <gtest/gtest.h>

#include <numeric>

#include <photonsim/benchmark.hpp>

#include "oracles.hpp"

using namespace photonsim;

namespace {

// Frozen outputs of the expanded-space oracle.
constexpr double DELTA_IDEAL_V05_N3_S7 = 0.17655560618540539;
constexpr double DELTA_DIST_V05_N3_S7 = 0.15767424611231828;

double mean_delta(double v, int n, Reference ref) {
    std::vector<uint64_t> seeds(20);
    std::iota(seeds.begin(), seeds.end(), 1);
    auto rows = delta_curve(v, {n}, seeds);
    double s = 0;
    for (const auto &r : rows) {
        s += r.delta(ref);
    }
    return s / static_cast<double>(rows.size());
}

}  // namespace

TEST(Benchmark, EndpointsVanish) {
    for (int n = 2; n <= 4; n++) {
        EXPECT_EQ(delta_benchmark(1.0, n, 3).delta_to_ideal, 0.0);
        EXPECT_EQ(delta_benchmark(0.0, n, 3).delta_to_distinguishable, 0.0);
    }
}

TEST(Benchmark, DefaultModesAreNSquared) {
    auto r = delta_benchmark(0.5, 3, 1);
    EXPECT_EQ(r.modes, 9);
    EXPECT_EQ(r.photon_number, 3);
    EXPECT_EQ(r.reference_unitary_seed, 1u);
    EXPECT_GT(r.delta_to_ideal, 0.0);
    EXPECT_GT(r.delta_to_distinguishable, 0.0);
}

TEST(Benchmark, GoldenRowMatchesExpandedSpace) {
    // V = 0.5, N = 3, seed 7: recompute the three distributions with the
    // first-quantized oracle on the same unitary.
    auto r = delta_benchmark(0.5, 3, 7);
    Rng rng(7);
    auto u = haar_random_unitary(9, rng);
    std::vector<int> in{0, 1, 2};
    auto real = oracle::first_quantized_distribution(u.matrix(), in, oracle::uniform_internal_states(3, std::sqrt(0.5)));
    auto ideal = oracle::first_quantized_distribution(u.matrix(), in, oracle::uniform_internal_states(3, 1.0));
    auto dist = oracle::first_quantized_distribution(u.matrix(), in, oracle::uniform_internal_states(3, 0.0));
    double di = 0;
    double dd = 0;
    for (const auto &[k, p] : real) {
        di += std::abs(p - ideal.at(k));
        dd += std::abs(p - dist.at(k));
    }
    EXPECT_NEAR(r.delta_to_ideal, di / 2, 1e-9);
    EXPECT_NEAR(r.delta_to_distinguishable, dd / 2, 1e-9);
    // Frozen values of the same computation.
    EXPECT_NEAR(r.delta_to_ideal, DELTA_IDEAL_V05_N3_S7, 1e-9);
    EXPECT_NEAR(r.delta_to_distinguishable, DELTA_DIST_V05_N3_S7, 1e-9);
}

TEST(Benchmark, MeanDeltaGrowsWithN) {
    double prev = 0;
    for (int n = 2; n <= 4; n++) {
        double d = mean_delta(0.9, n, Reference::ideal);
        EXPECT_GT(d, prev) << "n=" << n;
        prev = d;
    }
}

TEST(Benchmark, MeanDeltaShrinksWithV) {
    double prev = 2;
    for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        double d = mean_delta(v, 3, Reference::ideal);
        EXPECT_LT(d, prev) << "v=" << v;
        prev = d;
    }
}

TEST(Benchmark, Validation) {
    EXPECT_THROW(delta_benchmark(1.5, 2, 1), DomainError);
    EXPECT_THROW(delta_benchmark(0.5, 0, 1), DomainError);
    EXPECT_THROW(delta_benchmark(0.5, 9, 1), ResourceLimitError);
    BenchmarkOptions opt;
    opt.modes = 2;
    EXPECT_THROW(delta_benchmark(0.5, 3, 1, opt), DomainError);
}
