#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "meniscus/equilibrium.hpp"
#include "meniscus/errors.hpp"

using namespace meniscus;

namespace {

bool raises(ErrorKind kind, auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

// g = 0.8 + 0.2 x: g(0.5) = 0.9, g_x = 0.2.
SolidProfile ramp() { return SolidProfile::stationary_polynomial({0.8, 0.2}); }

}  // namespace

TEST(SteadyProfile, FlatWhenSlopeMatchesAngle) {
    const auto s = steady_profile(ramp(), 0.2, 0.5, 2.0);
    EXPECT_EQ(s.coeff2, 0.0);
    EXPECT_DOUBLE_EQ(s.height(1.3), 0.9);
}

TEST(SteadyProfile, ParabolaCoefficients) {
    const auto p = SolidProfile::stationary_polynomial({0.9, 0.2});  // g(0.5) = 1
    const auto s = steady_profile(p, 0.1, 0.5, 2.0);
    EXPECT_NEAR(s.coeff2, -1.0 / 30.0, 1e-16);
    EXPECT_NEAR(s.apex, 1.075, 1e-15);
    EXPECT_NEAR(s.height(0.5), 1.0, 1e-15);
    EXPECT_NEAR(s.slope(0.5), 0.1, 1e-15);
    EXPECT_EQ(s.slope(2.0), 0.0);
    EXPECT_NEAR(s.min_h, 1.0, 1e-15);
}

TEST(SteadyProfile, ConvexWhenSlopeBelowAngle) {
    EXPECT_GT(steady_profile(ramp(), 0.5, 0.5, 2.0).coeff2, 0.0);
}

TEST(SteadyProfile, Errors) {
    EXPECT_TRUE(raises(ErrorKind::DegenerateFilm, [] { steady_profile(SolidProfile::stationary_polynomial({0.1}), 1.0, 0.0, 3.0); }));
    EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [] { steady_profile(ramp(), 0.1, 2.0, 2.0); }));
}

TEST(LagrangeMultiplier, Values) {
    const auto p = SolidProfile::stationary_polynomial({0.9, 0.2});
    EXPECT_EQ(lagrange_multiplier(p, 0.2, 0.5, 2.0, {}), 0.0);
    const double lam = lagrange_multiplier(p, 0.1, 0.5, 2.0, {0.0, 1.0, 0.0});
    EXPECT_NEAR(lam, 2.0 / 15.0, 1e-16);
    EXPECT_NEAR(-lam / 2.0, 2.0 * steady_profile(p, 0.1, 0.5, 2.0).coeff2, 1e-16);
    EXPECT_NEAR(lagrange_multiplier(p, 0.1, 0.5, 2.0, {0.0, 2.0, 0.0}), 2.0 * lam, 1e-16);
}

TEST(YoungAngle, Values) {
    EXPECT_DOUBLE_EQ(young_angle({0.3, 1.0, 0.3}, 0.7), 0.7);
    const double k = young_angle({0.5, 1.0, 0.25}, 2.0);
    EXPECT_NEAR(k, 1.7320508075688772, 1e-15);
    EXPECT_LE(std::abs(1.0 * k * k + 4.0 * (0.5 - 1.0 - 0.25)), 1e-15);
    EXPECT_TRUE(raises(ErrorKind::EnergyConstraintViolation, [] { young_angle({2.0, 1.0, 0.0}, 1.0); }));
    EXPECT_TRUE(raises(ErrorKind::EnergyConstraintViolation, [] { young_angle({0.0, 0.0, 0.0}, 1.0); }));
}

TEST(YoungAngle, QuadraticFormResidual) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double b = 0.1 + u(rng), c = u(rng), a = (b + c) * 0.999 * u(rng), gx = 0.01 + u(rng);
        const double k = young_angle({a, b, c}, gx);
        const double scale = b * k * k + gx * gx * std::abs(a - b - c);
        EXPECT_LE(std::abs(b * k * k + gx * gx * (a - b - c)), 1e-12 * scale);
    }
}

TEST(EquilibriumVolume, ConstantSlopeCaseHasClosedForm) {
    // g_x = k: volume = int_0^Lb g + g(Lb) (L - Lb) = 0.8 Lb + 0.1 Lb^2 + (0.8 + 0.2 Lb)(2 - Lb).
    auto vol = [](double Lb) { return 0.8 * Lb + 0.1 * Lb * Lb + (0.8 + 0.2 * Lb) * (2.0 - Lb); };
    for (double Lb : {0.2, 0.7, 1.4}) EXPECT_NEAR(equilibrium_volume(ramp(), 0.2, Lb, 2.0), vol(Lb), 1e-14);
    // Inverse of the quadratic -0.1 Lb^2 + 0.4 Lb + 1.6 = V0 on the increasing branch.
    const double V0 = 1.9;
    const double expect = (0.4 - std::sqrt(0.16 - 0.4 * (V0 - 1.6))) / 0.2;
    EXPECT_NEAR(solve_equilibrium_position(V0, ramp(), 0.2, 2.0), expect, 1e-10);
}

TEST(EquilibriumVolume, RoundTrip) {
    const auto p = SolidProfile::wedge(TimePolynomial{{0.9}}, 0.2);
    const double V0 = equilibrium_volume(p, 0.1, 0.5, 2.0);
    const double Lb = solve_equilibrium_position(V0, p, 0.1, 2.0);
    EXPECT_NEAR(Lb, 0.5, 1e-10);
    EXPECT_LE(std::abs(equilibrium_volume(p, 0.1, Lb, 2.0) - V0), 1e-10 * V0);
}

TEST(EquilibriumVolume, Unattainable) {
    EXPECT_TRUE(raises(ErrorKind::VolumeUnattainable, [] { solve_equilibrium_position(100.0, ramp(), 0.2, 2.0); }));
}

TEST(EquilibriumVolume, NonmonotoneReportsAllRoots) {
    // g = 1.5 - 0.05 x^3, k = 0.05, L = 2: volume(Lb) = G(Lb) + g(Lb) m + (g_x(Lb) - k) m^2 / 3 with m = L - Lb
    // rises up to Lb = 2 - sqrt(4 - 2/3) and falls after, so a volume just above volume(0) has two roots.
    const auto p = SolidProfile::stationary_polynomial({1.5, 0.0, 0.0, -0.05});
    const double k = 0.05, L = 2.0;
    auto vol = [&](double Lb) {
        const double m = L - Lb;
        return 1.5 * Lb - 0.0125 * std::pow(Lb, 4) + (1.5 - 0.05 * Lb * Lb * Lb) * m + (-0.15 * Lb * Lb - k) * m * m / 3;
    };
    const double peak = 2.0 - std::sqrt(4.0 - 2.0 / 3.0);
    for (double Lb : {0.0, 0.1, peak, 1.0, 1.9}) EXPECT_NEAR(equilibrium_volume(p, k, Lb, L), vol(Lb), 1e-13);
    const double V0 = 0.5 * (vol(0.0) + vol(peak));
    const auto r = find_equilibrium_positions(V0, p, k, L);
    ASSERT_EQ(r.roots.size(), 2u);
    EXPECT_TRUE(r.nonmonotone);
    EXPECT_LT(r.roots[0], peak);
    EXPECT_GT(r.roots[1], peak);
    EXPECT_EQ(r.Lambda_bar, r.roots[0]);
    for (double x : r.roots) EXPECT_LE(std::abs(vol(x) - V0), 1e-10 * V0);
}
