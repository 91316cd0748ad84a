#include <gtest/gtest.h>

#include <photonsim/fock_engine.hpp>

#include "oracles.hpp"

using namespace photonsim;

TEST(FockState, ValidatesAndParses) {
    EXPECT_THROW(FockState({1, -1}), DomainError);
    auto s = FockState::parse("1,0,2");
    EXPECT_EQ(s.modes(), 3);
    EXPECT_EQ(s.photons(), 3);
    EXPECT_EQ(s.str(), "1,0,2");
    EXPECT_EQ(s.photon_modes(), (std::vector<int>{0, 2, 2}));
    EXPECT_DOUBLE_EQ(s.factorial_product(), 2.0);
    EXPECT_THROW(FockState::parse("1,x"), DomainError);
}

TEST(FockState, BasisIsLexicographicAndRanked) {
    auto basis = fock_basis(3, 4);
    ASSERT_EQ(basis.size(), basis_size(3, 4));
    EXPECT_EQ(basis.size(), 20u);
    for (size_t i = 0; i < basis.size(); i++) {
        EXPECT_EQ(fock_rank(basis[i]), i);
        if (i > 0) {
            EXPECT_LT(basis[i - 1], basis[i]);
        }
    }
    EXPECT_EQ(basis.front(), FockState({0, 0, 0, 3}));
    EXPECT_EQ(basis.back(), FockState({3, 0, 0, 0}));
}

TEST(FockEngine, IdentityIsDelta) {
    auto id = Interferometer::identity(3);
    FockState in({1, 0, 1});
    auto dist = output_distribution(id, in);
    EXPECT_DOUBLE_EQ(dist.at(in), 1.0);
    EXPECT_NEAR(total_probability(dist), 1.0, 1e-15);
}

TEST(FockEngine, HongOuMandelDip) {
    auto bs = Interferometer::beamsplitter(2, 0, 1);
    auto dist = output_distribution(bs, FockState({1, 1}));
    EXPECT_NEAR(dist.at(FockState({1, 1})), 0.0, 1e-15);
    EXPECT_NEAR(dist.at(FockState({2, 0})), 0.5, 1e-15);
    EXPECT_NEAR(dist.at(FockState({0, 2})), 0.5, 1e-15);
}

TEST(FockEngine, PhotonNumberMismatchThrows) {
    auto id = Interferometer::identity(2);
    EXPECT_THROW(transition_amplitude(id, FockState({1, 0}), FockState({1, 1})), DomainError);
    EXPECT_THROW(output_distribution(id, FockState({1, 0, 0})), ShapeError);
}

TEST(FockEngine, MatchesFirstQuantizedOracle) {
    for (int n = 1; n <= 4; n++) {
        const int m = n + 2;
        auto u = haar_random_unitary(m, 7 + static_cast<uint64_t>(n));
        auto in = FockState::first_modes(n, m);
        auto dist = output_distribution(u, in);
        auto want = oracle::first_quantized_distribution(u.matrix(), in.photon_modes(), CMatrix::Ones(n, 1));
        ASSERT_EQ(dist.size(), want.size());
        for (const auto &[state, p] : dist) {
            EXPECT_NEAR(p, want.at(state.occupations()), 1e-9) << state;
        }
        EXPECT_NEAR(total_probability(dist), 1.0, 1e-12);
    }
}

TEST(FockEngine, BunchedInputsUseOccupationFactorials) {
    // Two photons in one mode of a balanced splitter: |2,0> -> (|2,0> + 2i|1,1> - |0,2>)/2 up to convention.
    auto bs = Interferometer::beamsplitter(2, 0, 1);
    auto dist = output_distribution(bs, FockState({2, 0}));
    EXPECT_NEAR(dist.at(FockState({2, 0})), 0.25, 1e-15);
    EXPECT_NEAR(dist.at(FockState({1, 1})), 0.5, 1e-15);
    EXPECT_NEAR(dist.at(FockState({0, 2})), 0.25, 1e-15);
}

TEST(FockEngine, CapsRaiseResourceError) {
    Caps caps;
    caps.max_photons = 2;
    auto id = Interferometer::identity(4);
    EXPECT_THROW(output_distribution(id, FockState({1, 1, 1, 0}), caps), ResourceLimitError);
    caps = Caps{};
    caps.max_modes = 3;
    EXPECT_THROW(output_distribution(id, FockState({1, 0, 0, 0}), caps), ResourceLimitError);
}

TEST(FockEngine, SamplingIsSeededAndFollowsDistribution) {
    auto u = haar_random_unitary(4, 3);
    FockState in({1, 1, 0, 0});
    Rng a(11);
    Rng b(11);
    auto s1 = sample_outputs(u, in, a, 20000);
    auto s2 = sample_outputs(u, in, b, 20000);
    EXPECT_EQ(s1, s2);
    auto dist = output_distribution(u, in);
    std::map<FockState, int> counts;
    for (const auto &s : s1) {
        counts[s]++;
    }
    for (const auto &[state, p] : dist) {
        double se = std::sqrt(p * (1 - p) / 20000.0);
        EXPECT_NEAR(counts[state] / 20000.0, p, 5 * se + 1e-12) << state;
    }
}

TEST(FockEngine, LossThinsBinomially) {
    ProbabilityMap d{{FockState({2, 1}), 1.0}};
    auto out = apply_loss(d, LossChannel({0.5, 0.25}));
    EXPECT_NEAR(total_probability(out), 1.0, 1e-15);
    EXPECT_NEAR(out.at(FockState({2, 1})), 0.25 * 0.25, 1e-15);
    EXPECT_NEAR(out.at(FockState({1, 0})), 0.5 * 0.75, 1e-15);
    EXPECT_NEAR(out.at(FockState({0, 0})), 0.25 * 0.75, 1e-15);
    EXPECT_THROW(LossChannel({1.5}), DomainError);
    EXPECT_THROW(apply_loss(d, LossChannel({1.0})), ShapeError);
}

TEST(FockEngine, TotalVariation) {
    ProbabilityMap p{{FockState({1, 0}), 0.5}, {FockState({0, 1}), 0.5}};
    ProbabilityMap q{{FockState({1, 0}), 1.0}};
    EXPECT_DOUBLE_EQ(total_variation(p, q), 0.5);
    EXPECT_DOUBLE_EQ(total_variation(p, p), 0.0);
}

TEST(Interferometer, RejectsNonUnitary) {
    CMatrix a = CMatrix::Identity(2, 2);
    a(0, 1) = 0.1;
    EXPECT_THROW(Interferometer{a}, NumericalError);
}

TEST(Interferometer, HaarIsUnitaryAndSeeded) {
    auto a = haar_random_unitary(6, 42);
    auto b = haar_random_unitary(6, 42);
    EXPECT_LT(unitarity_residual(a.matrix()), 1e-12);
    EXPECT_EQ(a.matrix(), b.matrix());
    EXPECT_NE(a.matrix(), haar_random_unitary(6, 43).matrix());
}
