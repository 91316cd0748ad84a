#include <gtest/gtest.h>

#include <photonsim/mesh.hpp>

using namespace photonsim;

TEST(Mesh, CellCountIsTriangular) {
    auto p = clements_decompose(haar_random_unitary(5, 1));
    EXPECT_EQ(p.modes, 5);
    EXPECT_EQ(p.cells.size(), 10u);
    EXPECT_EQ(p.output_phases.size(), 5u);
    for (const auto &c : p.cells) {
        EXPECT_GE(c.theta, 0.0);
        EXPECT_LE(c.theta, M_PI + 1e-12);
        EXPECT_GE(c.phi, 0.0);
        EXPECT_LT(c.phi, 2 * M_PI);
        EXPECT_TRUE(c.mode >= 0 && c.mode + 1 < 5);
    }
}

TEST(Mesh, RoundTripHaar) {
    double worst = 0;
    for (uint64_t seed = 0; seed < 100; seed++) {
        const int m = 2 + static_cast<int>(seed % 7);
        auto u = haar_random_unitary(m, seed);
        auto back = mesh_compose(clements_decompose(u));
        worst = std::max(worst, (back.matrix() - u.matrix()).cwiseAbs().maxCoeff());
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(Mesh, RoundTripSpecialMatrices) {
    std::vector<Interferometer> cases{Interferometer::identity(4), Interferometer::beamsplitter(4, 1, 2)};
    CMatrix perm = CMatrix::Zero(4, 4);
    perm(0, 3) = perm(1, 0) = perm(2, 1) = perm(3, 2) = 1;
    cases.emplace_back(perm);
    CMatrix phases = CMatrix::Zero(3, 3);
    phases.diagonal() << std::polar(1.0, 0.3), std::polar(1.0, -2.0), -1.0;
    cases.emplace_back(phases);
    for (const auto &u : cases) {
        auto back = mesh_compose(clements_decompose(u));
        EXPECT_LT((back.matrix() - u.matrix()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Mesh, SingleModeIsPhase) {
    CMatrix one(1, 1);
    one(0, 0) = std::polar(1.0, 1.25);
    auto p = clements_decompose(Interferometer(one));
    EXPECT_TRUE(p.cells.empty());
    EXPECT_NEAR(p.output_phases.at(0), 1.25, 1e-15);
}

TEST(Mesh, ComposeRejectsBadCells) {
    MeshParams p;
    p.modes = 2;
    p.cells.push_back({1, 0.1, 0.2});
    p.output_phases = {0, 0};
    EXPECT_THROW(mesh_compose(p), ShapeError);
}
