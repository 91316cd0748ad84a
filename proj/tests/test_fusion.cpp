#include <gtest/gtest.h>

#include <photonsim/fock_engine.hpp>
#include <photonsim/fusion.hpp>

using namespace photonsim;

namespace {

FusionResult fuse_until(const QubitStateVector &a, const QubitStateVector &b, FusionKind kind, int outcome) {
    for (uint64_t seed = 0; seed < 200; seed++) {
        Rng rng(seed);
        auto r = fuse(a, b, kind, rng);
        if (r.outcome == outcome) {
            return r;
        }
    }
    ADD_FAILURE() << "outcome " << outcome << " never drawn";
    return {};
}

void expect_abs_one(const QubitStateVector &s, const StabilizerSet &stabs) {
    for (double e : stabilizer_expectations(s, stabs)) {
        EXPECT_NEAR(std::abs(e), 1.0, 1e-12);
    }
}

}  // namespace

TEST(Fusion, TypeOneSuccessFraction) {
    auto c2 = linear_cluster_state(2);
    Rng rng(2024);
    int ok = 0;
    for (int t = 0; t < 10000; t++) {
        ok += fuse(c2, c2, FusionKind::type1, rng).success ? 1 : 0;
    }
    EXPECT_NEAR(ok / 1e4, 0.5, 0.015);
}

TEST(Fusion, TypeOneSuccessGivesThreeCluster) {
    auto c2 = linear_cluster_state(2);
    for (int outcome : {0, 1}) {
        auto r = fuse_until(c2, c2, FusionKind::type1, outcome);
        ASSERT_TRUE(r.success);
        EXPECT_NEAR(r.probability, 0.25, 1e-12);
        ASSERT_EQ(r.state.qubits(), 3);
        for (double e : stabilizer_expectations(r.state, StabilizerSet::linear_cluster(3))) {
            EXPECT_NEAR(e, 1.0, 1e-12);
        }
    }
}

TEST(Fusion, TypeOneFailureRemovesOnlyTheFusedQubits) {
    auto c3 = linear_cluster_state(3);
    for (int outcome : {2, 3}) {
        auto r = fuse_until(c3, c3, FusionKind::type1, outcome);
        EXPECT_FALSE(r.success);
        ASSERT_EQ(r.state.qubits(), 4);
        // Two 2-clusters survive, up to Pauli signs from the Z readout.
        expect_abs_one(r.state, StabilizerSet({PauliString::parse("XZII"), PauliString::parse("ZXII"),
                                               PauliString::parse("IIXZ"), PauliString::parse("IIZX")}));
    }
}

TEST(Fusion, TypeTwoJoinsChains) {
    auto c3 = linear_cluster_state(3);
    for (int outcome : {0, 1}) {
        auto r = fuse_until(c3, c3, FusionKind::type2, outcome);
        ASSERT_TRUE(r.success);
        ASSERT_EQ(r.state.qubits(), 4);
        for (double e : stabilizer_expectations(r.state, StabilizerSet::linear_cluster(4))) {
            EXPECT_NEAR(e, 1.0, 1e-12);
        }
    }
    // Failure reads qubit a in Z and, through the Hadamard, qubit b in X.
    // The X readout of a chain end also fixes its neighbour in Z.
    for (int outcome : {2, 3}) {
        auto r = fuse_until(c3, c3, FusionKind::type2, outcome);
        EXPECT_FALSE(r.success);
        ASSERT_EQ(r.state.qubits(), 4);
        expect_abs_one(r.state, StabilizerSet({PauliString::parse("XZII"), PauliString::parse("ZXII"),
                                               PauliString::parse("IIZI"), PauliString::parse("IIIX")}));
    }
}

TEST(Fusion, TypeTwoSuccessFraction) {
    auto c2 = linear_cluster_state(2);
    Rng rng(7);
    int ok = 0;
    for (int t = 0; t < 10000; t++) {
        ok += fuse(c2, c2, FusionKind::type2, rng).success ? 1 : 0;
    }
    EXPECT_NEAR(ok / 1e4, 0.5, 0.015);
}

TEST(Fusion, BeamsplitterLevelSuccessProbability) {
    // Two dual-rail 2-clusters on 8 modes, qubit q in modes (2q, 2q+1).
    // The fusion splitter mixes mode 3 (|1> rail of qubit 1) with mode 4
    // (|0> rail of qubit 2); success is exactly one photon on the two
    // detectors.
    auto c2 = linear_cluster_state(2);
    CVector amp(16);
    for (int x = 0; x < 16; x++) {
        amp(x) = c2.amplitudes()(x >> 2) * c2.amplitudes()(x & 3);
    }
    auto bs = Interferometer::beamsplitter(8, 3, 4);
    std::map<FockState, cdouble> out;
    for (int x = 0; x < 16; x++) {
        std::vector<int> occ(8, 0);
        for (int q = 0; q < 4; q++) {
            occ[static_cast<size_t>(2 * q + ((x >> (3 - q)) & 1))] = 1;
        }
        FockState in(occ);
        for (const auto &o : fock_basis(4, 8)) {
            cdouble a = transition_amplitude(bs, in, o);
            if (std::abs(a) > 0) {
                out[o] += amp(x) * a;
            }
        }
    }
    double p_one = 0;
    for (const auto &[o, a] : out) {
        if (o[3] + o[4] == 1) {
            p_one += std::norm(a);
        }
    }
    EXPECT_NEAR(p_one, 0.5, 1e-12);
    Rng rng(1);
    auto r = fuse_until(c2, c2, FusionKind::type1, 0);
    EXPECT_NEAR(2 * r.probability, p_one, 1e-12);
}

TEST(Fusion, Errors) {
    auto c2 = linear_cluster_state(2);
    Rng rng(1);
    CVector one = CVector::Ones(1);
    QubitStateVector vacuum(one, {});
    EXPECT_THROW(fuse(vacuum, c2, FusionKind::type1, rng), DomainError);
    EXPECT_THROW(fuse(c2, vacuum, FusionKind::type2, rng), DomainError);
    FusionSites sites;
    sites.qubit_a = 5;
    EXPECT_THROW(fuse(c2, c2, FusionKind::type1, rng, sites), ShapeError);
    auto spin = QubitStateVector::zeros({QubitKind::spin});
    EXPECT_THROW(fuse(spin, c2, FusionKind::type1, rng), DomainError);
}
