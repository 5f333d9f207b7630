#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "meniscus/domain_transform.hpp"
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

}  // namespace

TEST(LinearMap, EndpointsAndInterior) {
    const LinearMap m{0.4, 0.5, 2.0};
    EXPECT_EQ(linear_map(0.4, m), 0.5);
    EXPECT_EQ(linear_map(2.0, m), 2.0);
    EXPECT_NEAR(linear_map(1.2, m), 1.25, 1e-15);
    EXPECT_NEAR(linear_map_inverse(1.25, m), 1.2, 1e-15);
}

TEST(LinearMap, RoundTripOnRandomPoints) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double L = 1.0 + u(rng);
        const LinearMap m{0.9 * L * u(rng), 0.9 * L * u(rng), L};
        const double x = m.Lambda + (L - m.Lambda) * u(rng);
        EXPECT_NEAR(linear_map_inverse(linear_map(x, m), m), x, 1e-14);
    }
}

TEST(LinearMap, Rates) {
    EXPECT_DOUBLE_EQ(linear_map_rates({0.5, 0.5, 2.0}, 0.3, 1.0).dxbar_dx, 1.0);
    EXPECT_EQ(linear_map_rates({0.4, 0.5, 2.0}, 0.1, 2.0).dxbar_dt, 0.0);
    EXPECT_NEAR(linear_map_rates({0.4, 0.5, 2.0}, 0.1, 1.0).dxbar_dt, -0.05859375, 1e-16);
}

TEST(LinearMap, Errors) {
    EXPECT_TRUE(raises(ErrorKind::OutOfDomain, [] { linear_map(0.3, {0.4, 0.5, 2.0}); }));
    EXPECT_TRUE(raises(ErrorKind::MapDegenerate, [] { linear_map(2.0, {2.0, 0.5, 2.0}); }));
}

TEST(Cutoff, ExactPlateausAndSlopeConstant) {
    const double d = 0.1;
    EXPECT_EQ(cutoff(0.0, d), 1.0);
    EXPECT_EQ(cutoff(d, d), 1.0);
    EXPECT_EQ(cutoff(2 * d, d), 0.0);
    EXPECT_EQ(cutoff(3 * d, d), 0.0);
    const double C = cutoff_slope_constant();
    EXPECT_GT(C, 1.0);
    EXPECT_LT(C, 5.0);
    // The maximum of |xi'| sits at s = 1.5 delta by symmetry.
    EXPECT_NEAR(std::abs(cutoff_derivative(1.5 * d, d)) * d, C, 1e-6);
}

TEST(CutoffMap, IdentityOutsideSupportAndZeroAtContact) {
    const CutoffMap m{0.1, 0.005};
    EXPECT_EQ(cutoff_map(m.Lambda, m), 0.0);
    const double x = m.Lambda + 0.3;
    EXPECT_EQ(cutoff_map(x, m), x);
    for (int i = 0; i <= 20; ++i) {
        const double y = m.Lambda + 0.2 + 0.05 * i;
        EXPECT_EQ(cutoff_map(y, m), y);
    }
}

TEST(CutoffMap, MonotoneWhenConstraintHolds) {
    const CutoffMap m{0.1, 0.005};
    const double C = cutoff_slope_constant();
    double prev = cutoff_map(m.Lambda, m);
    for (int i = 1; i <= 1000; ++i) {
        const double x = m.Lambda + 0.3 * i / 1000.0;
        const double q = cutoff_map(x, m);
        EXPECT_GT(q, prev);
        prev = q;
        EXPECT_GE(cutoff_map_derivative(x, m), 1.0 - C * m.delta - 1e-12);
    }
}

TEST(CutoffMap, ConstraintViolation) {
    EXPECT_TRUE(raises(ErrorKind::ConstraintViolation, [] { cutoff_map(0.5, CutoffMap{0.1, 0.02}); }));
}

TEST(BoundaryData, Values) {
    const auto still = boundary_data(SolidProfile::stationary_polynomial({1.0, 0.2}), 0.3, 0.0, 0.1);
    EXPECT_EQ(still.psi3, 0.0);
    const auto flat = boundary_data(SolidProfile::constant_descent(1.0, 1.0, 1.0), 0.25, 0.0, 0.1);
    EXPECT_DOUBLE_EQ(flat.psi1, 1.0);
    EXPECT_DOUBLE_EQ(flat.psi2, -0.1);
    EXPECT_DOUBLE_EQ(flat.psi3, 0.5);
    const auto w = boundary_data(SolidProfile::wedge(TimePolynomial{{1.0}}, 2.0), 0.3, 0.0, 0.1);
    EXPECT_DOUBLE_EQ(w.psi2, 1.9);
}

TEST(BoundaryData, FluxConditionIdentity) {
    const auto p = SolidProfile::wedge(TimePolynomial{{1.0, -0.7}}, 0.4);
    const double Lambda = 0.35, t = 0.2;
    const auto b = boundary_data(p, Lambda, t, 0.1);
    const double g = eval_g(p, Lambda, t);
    EXPECT_NEAR(b.psi3 * g, -2.0 * Lambda * (-0.7) / (g * g), 1e-15);
    EXPECT_TRUE(raises(ErrorKind::ProfileViolation,
                       [] { boundary_data(SolidProfile::constant_descent(1.0, 1.0, 1.0), 0.0, 1.0, 0.1); }));
}

TEST(Lift, ConstantFilmWithoutBoundaryData) {
    const Grid grid(41, 0.0, 1.0);
    const std::vector<double> H(grid.n, 1.0);
    const double d = 0.1;
    const auto U = lift_profile(H, grid, {1.0, 0.0, 0.0}, d);
    for (int i = 0; i < grid.n; ++i) EXPECT_DOUBLE_EQ(U[i], cutoff(grid.node(i), d));
}

TEST(Lift, RoundTrip) {
    const Grid grid(101, 0.0, 2.0);
    std::vector<double> H(grid.n);
    for (int i = 0; i < grid.n; ++i) H[i] = 1.0 + 0.3 * std::sin(grid.node(i));
    const BoundaryData data{1.0, 0.3, -0.2};
    const auto back = unlift_profile(lift_profile(H, grid, data, 0.2), grid, data, 0.2);
    for (int i = 0; i < grid.n; ++i) EXPECT_NEAR(back[i], H[i], 1e-15);
}

TEST(Lift, BoundaryDerivativesShift) {
    // H = 1 + 0.3 x + 0.2 x^3 near 0: U_x(0) = H_x(0) - psi2, U_xxx(0) = H_xxx(0) - 6 psi3.
    const double dx = 1e-3;
    const Grid grid(201, 0.0, 200 * dx);
    std::vector<double> H(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        H[i] = 1.0 + 0.3 * x + 0.2 * x * x * x;
    }
    const BoundaryData data{1.0, 0.1, 0.05};
    const auto U = lift_profile(H, grid, data, 0.1);
    const double Ux = (-3 * U[0] + 4 * U[1] - U[2]) / (2 * dx);
    const double Uxxx = (-U[0] + 3 * U[1] - 3 * U[2] + U[3]) / (dx * dx * dx);
    EXPECT_NEAR(Ux + dx * dx * Uxxx / 3, 0.3 - 0.1, 1e-9);  // one-sided stencil error is -dx^2 f''' / 3
    EXPECT_NEAR(Uxxx, 1.2 - 6 * 0.05, 1e-6);
}
