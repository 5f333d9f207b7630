#include <gtest/gtest.h>

#include <cmath>

#include "meniscus/diagnostics.hpp"
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

FilmState flat_state(int n, double a, double b, double Lambda, double h) {
    return {Grid(n, a, b), std::vector<double>(n, h), Lambda, 0.0};
}

// g(0.5) = 1, g_x = 0.2; with k = 0.1 the parabola is -(x - 2)^2 / 30 + 1.075.
SolidProfile ramp() { return SolidProfile::stationary_polynomial({0.9, 0.2}); }

}  // namespace

TEST(TotalMass, FlatFilms) {
    const auto none = SolidProfile::stationary_polynomial({1.0});
    EXPECT_DOUBLE_EQ(total_mass(flat_state(11, 0.0, 2.0, 0.0, 1.0), none), 2.0);
    EXPECT_DOUBLE_EQ(total_mass(flat_state(11, 0.5, 2.0, 0.5, 1.0), none), 2.0);
}

TEST(TotalMass, SteadyParabolaClosedForm) {
    const auto s = sampled_steady_state(ramp(), 0.1, Grid(20001, 0.5, 2.0), 0.5);
    // int_0^0.5 (0.9 + 0.2 x) + int_0.5^2 (1.075 - (x - 2)^2 / 30)
    const double exact = 0.45 + 0.025 + 1.075 * 1.5 - 1.5 * 1.5 * 1.5 / 90.0;
    EXPECT_NEAR(total_mass(s, ramp()), exact, 1e-10);
}

TEST(TotalEnergy, FlatFilmWithoutSolidSlope) {
    // The one-sided end slopes of a constant round to a few ulps, squared.
    EXPECT_NEAR(total_energy(flat_state(21, 0.5, 2.0, 0.5, 1.3), SolidProfile::stationary_polynomial({1.3}), {0.4, 1.0, 0.2}),
                0.0, 1e-28);
}

TEST(TotalEnergy, SteadyParabola) {
    const InterfaceEnergies e{0.0, 1.0, 0.0};
    std::vector<double> errs;
    for (int n : {201, 401, 801}) {
        const auto s = sampled_steady_state(ramp(), 0.1, Grid(n, 0.5, 2.0), 0.5);
        errs.push_back(std::abs(total_energy(s, ramp(), e) - 0.005));
    }
    EXPECT_LT(errs.back(), 1e-8);
    EXPECT_GT(errs[0] / errs[1], 3.5);
    const auto s = sampled_steady_state(ramp(), 0.1, Grid(201, 0.5, 2.0), 0.5);
    EXPECT_NEAR(total_energy(s, ramp(), {0.0, 2.0, 0.0}), 2.0 * total_energy(s, ramp(), e), 1e-17);
}

TEST(TotalEnergy, SolidTerms) {
    // a int_0^Lambda g_x^2 + c int_Lambda^b g_x^2 with g_x = 0.2 everywhere.
    const auto s = flat_state(21, 0.5, 2.0, 0.5, 1.0);
    EXPECT_NEAR(total_energy(s, ramp(), {1.0, 1.0, 0.0}), 0.04 * 0.5, 1e-15);
    EXPECT_NEAR(total_energy(s, ramp(), {0.0, 1.0, 1.0}), 0.04 * 1.5, 1e-15);
}

TEST(Dissipation, SteadyParabolaVanishes) {
    // Dyadic data: g = 0.875 + 0.25 x, k = 0.0625, grid spacing 1/128.
    const auto p = SolidProfile::stationary_polynomial({0.875, 0.25});
    const auto s = sampled_steady_state(p, 0.0625, Grid(193, 0.5, 2.0), 0.5);
    EXPECT_LE(dissipation_rate(s, 1.0), 1e-20);
    const auto g = sampled_steady_state(ramp(), 0.1, Grid(201, 0.5, 2.0), 0.5);
    EXPECT_LE(dissipation_rate(g, 1.0), 1e-15);
}

TEST(Dissipation, CubicPerturbation) {
    const double eps = 1e-3;
    FilmState s{Grid(1001, 0.0, 1.0), {}, 0.0, 0.0};
    for (int i = 0; i < s.grid.n; ++i) s.H.push_back(1.0 + eps * std::pow(s.grid.node(i), 3));
    const double series = 72 * eps * eps * (1 + 0.75 * eps + 3 * eps * eps / 7 + eps * eps * eps / 10);
    EXPECT_NEAR(dissipation_rate(s, 1.0), series, 1e-6 * series);
    s.H[3] = -1.0;
    EXPECT_TRUE(raises(ErrorKind::DegenerateFilm, [&] { dissipation_rate(s, 1.0); }));
}

TEST(NodeStencils, ExactOnCubics) {
    const double dx = 0.125;
    std::vector<double> H;
    for (int i = 0; i < 12; ++i) {
        const double x = i * dx;
        H.push_back(1 + x - 2 * x * x + 3 * x * x * x);
    }
    const auto d3 = node_third_derivatives(H, dx);
    for (double v : d3) EXPECT_NEAR(v, 18.0, 1e-11);
    const auto d1 = node_slopes(H, dx);
    for (int i = 1; i < 11; ++i) {
        const double x = i * dx;
        EXPECT_NEAR(d1[i], 1 - 4 * x + 9 * x * x + 3 * dx * dx, 1e-12);  // centred slope error is f''' dx^2 / 6
    }
}

TEST(FitDecay, ExactExponential) {
    std::vector<std::pair<double, double>> s;
    for (int i = 0; i < 50; ++i) s.emplace_back(0.1 * i, 3.0 * std::exp(-0.7 * 0.1 * i));
    const auto f = fit_decay(s);
    EXPECT_NEAR(f.omega, 0.7, 1e-10);
    EXPECT_NEAR(f.prefactor, 3.0, 1e-10);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
}

TEST(FitDecay, ConstantAndWindow) {
    std::vector<std::pair<double, double>> s;
    for (int i = 0; i < 30; ++i) s.emplace_back(i, 2.0);
    const auto f = fit_decay(s);
    EXPECT_EQ(f.omega, 0.0);
    EXPECT_EQ(f.r_squared, 1.0);
    EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [&] { fit_decay(s, {0.0, 5.0}); }));
    s[4].second = 0.0;
    EXPECT_TRUE(raises(ErrorKind::NonPositiveSeries, [&] { fit_decay(s); }));
}

TEST(Poincare, PositiveAndConverged) {
    const auto c = discrete_poincare(Grid(200, 0.0, 1.0), 1.0);
    const auto f = discrete_poincare(Grid(400, 0.0, 1.0), 1.0);
    EXPECT_GT(c.mu, 0.0);
    EXPECT_LE(std::abs(f.mu - c.mu) / c.mu, 0.02);
    EXPECT_NEAR(c.constant_C * c.mu, 1.0, 1e-14);
    EXPECT_GT(c.trace_constant, 0.0);
}

TEST(Poincare, MeanConstraintMatters) {
    PoincareOptions off;
    off.zero_mean = false;
    const auto on = discrete_poincare(Grid(200, 0.0, 1.0), 1.0);
    const auto free = discrete_poincare(Grid(200, 0.0, 1.0), 1.0, off);
    EXPECT_LE(free.mu, on.mu);
    EXPECT_LE(free.mu, 0.1 * on.mu);
}

TEST(Poincare, SpectrumAscending) {
    PoincareOptions o;
    o.n_modes = 4;
    const auto r = discrete_poincare(Grid(120, 0.0, 2.0), 0.5, o);
    ASSERT_EQ(r.spectrum.size(), 4u);
    EXPECT_EQ(r.spectrum.front(), r.mu);
    for (int i = 1; i < 4; ++i) EXPECT_GT(r.spectrum[i], r.spectrum[i - 1]);
}

TEST(Poincare, GridTooSmall) {
    EXPECT_TRUE(raises(ErrorKind::GridTooSmall, [] { discrete_poincare(Grid(40, 0.0, 1.0), 1.0); }));
}

TEST(DiscreteSteadyState, MatchesMass) {
    const Grid grid(201, 0.5, 2.0);
    const double target = total_mass(sampled_steady_state(ramp(), 0.1, grid, 0.5), ramp()) + 1e-4;
    const auto s = discrete_steady_state(ramp(), 0.1, grid, target, 0.5);
    EXPECT_NEAR(total_mass(s, ramp()), target, 1e-12 * target);
    EXPECT_NE(s.Lambda, 0.5);
    EXPECT_LE(dissipation_rate(s, 1.0), 1e-12);
}
