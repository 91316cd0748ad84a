#include <gtest/gtest.h>

#include <photonsim/biexciton.hpp>

using namespace photonsim;

namespace {

// Composite Simpson rule for <exp(i x t)> over exp(-t) truncated to [0, w].
cdouble coherence_quadrature(double x, double w) {
    const int steps = 200000;
    const double h = w / steps;
    cdouble num = 0;
    double den = 0;
    for (int i = 0; i <= steps; i++) {
        const double t = i * h;
        const double weight = (i == 0 || i == steps) ? 1 : (i % 2 ? 4 : 2);
        num += weight * std::exp(-t) * std::polar(1.0, x * t);
        den += weight * std::exp(-t);
    }
    return num / den;
}

}  // namespace

TEST(Biexciton, ZeroSplittingIsBell) {
    BiexcitonParams p;
    auto rho = biexciton_bell(p);
    EXPECT_NEAR(state_fidelity(rho, bell_phi_plus()), 1.0, 1e-15);
    EXPECT_NEAR(biexciton_concurrence(p), 1.0, 1e-15);
}

TEST(Biexciton, LargeSplittingDephases) {
    BiexcitonParams p;
    p.fine_structure_splitting = 1e6;
    EXPECT_NEAR(state_fidelity(biexciton_bell(p), bell_phi_plus()), 0.5, 1e-6);
    EXPECT_LT(biexciton_concurrence(p), 1e-6);
}

TEST(Biexciton, MatchesQuadrature) {
    BiexcitonParams p;
    p.exciton_lifetime = 1e-9;
    p.fine_structure_splitting = kHbarMicroEvSeconds / p.exciton_lifetime;  // S tau / hbar = 1
    const cdouble c = coherence_quadrature(1.0, 60.0);
    EXPECT_NEAR(std::abs(biexciton_coherence(p) - c), 0.0, 1e-9);
    const double fid = state_fidelity(biexciton_bell(p), bell_phi_plus());
    EXPECT_NEAR(fid, (1 + c.real()) / 2, 1e-9);
    EXPECT_NEAR(fid, 0.75, 1e-9);  // (1 + 1/2) / 2

    p.window = 2e-9;
    const cdouble cw = coherence_quadrature(1.0, 2.0);
    EXPECT_NEAR(std::abs(biexciton_coherence(p) - cw), 0.0, 1e-9);
    EXPECT_GT(std::abs(cw), std::abs(c));
}

TEST(Biexciton, ConcurrenceDecreasesWithSplitting) {
    BiexcitonParams p;
    double prev = 2;
    for (double s = 0; s <= 10; s += 0.5) {
        p.fine_structure_splitting = s;
        const double c = biexciton_concurrence(p);
        EXPECT_LE(c, prev + 1e-15);
        prev = c;
        p.fine_structure_splitting = -s;
        EXPECT_NEAR(biexciton_concurrence(p), c, 1e-15);
    }
}

TEST(Biexciton, Validation) {
    BiexcitonParams p;
    p.exciton_lifetime = 0;
    EXPECT_THROW(biexciton_bell(p), DomainError);
    p = BiexcitonParams{};
    p.window = -1;
    EXPECT_THROW(biexciton_bell(p), DomainError);
}
