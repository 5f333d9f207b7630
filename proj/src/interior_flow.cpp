#include "meniscus/interior_flow.hpp"

#include <cmath>

#include "meniscus/errors.hpp"

namespace meniscus {

namespace {

double positive_g(const SolidProfile& profile, double x, double t) {
    const double g = eval_g(profile, x, t);
    if (!(g > 0.0)) raise(ErrorKind::ProfileViolation, "solid touches the bottom (g <= 0)");
    return g;
}

void require_positive_height(double h) {
    if (!(h > 0.0)) raise(ErrorKind::DegenerateFilm, "film height at the contact point must be positive");
}

}  // namespace

SlipCoefficient SlipCoefficient::finite(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        raise(ErrorKind::InvalidArgument, "slip coefficient must be positive and finite; use no_slip() for infinity");
    SlipCoefficient s;
    s.no_slip_ = false;
    s.beta_ = beta;
    return s;
}

double solve_A_noslip(const SolidProfile& profile, double x, double t) {
    const double g = positive_g(profile, x, t);
    const double gt = eval_g_derivs_onesided(profile, x, t, Side::Right).gt;
    return -6.0 * x * gt / (g * g);
}

InteriorCoefficients interior_coefficients(const SolidProfile& profile, const SlipCoefficient& slip, double x,
                                           double t) {
    const double g = positive_g(profile, x, t);
    const auto d = eval_g_derivs_onesided(profile, x, t, Side::Right);
    if (slip.is_no_slip()) return {2.0 * d.gx / g, 6.0 * d.gt / (g * g)};
    const double inv_beta = 1.0 / slip.beta();
    const double denom = g * (inv_beta + g / 6.0);
    return {d.gx * (inv_beta + g / 3.0) / denom, d.gt / denom};
}

InteriorSolution solve_A_slip(const SolidProfile& profile, const SlipCoefficient& slip, double Lambda, double t,
                              int steps) {
    if (steps < 1) raise(ErrorKind::InvalidArgument, "interior integration needs at least one step");
    if (!(Lambda >= 0.0)) raise(ErrorKind::InvalidArgument, "contact point must be non-negative");
    InteriorSolution sol;
    sol.slip = slip;
    sol.t = t;
    sol.x.resize(steps + 1);
    sol.A.resize(steps + 1);
    const double h = Lambda / steps;
    auto rhs = [&](double x, double A) {
        const auto c = interior_coefficients(profile, slip, x, t);
        return -(c.r1 * A + c.r2);
    };
    double A = 0.0;
    sol.x[0] = 0.0;
    sol.A[0] = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double x = i * h;
        const double k1 = rhs(x, A);
        const double k2 = rhs(x + 0.5 * h, A + 0.5 * h * k1);
        const double k3 = rhs(x + 0.5 * h, A + 0.5 * h * k2);
        const double k4 = rhs(x + h, A + h * k3);
        A += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        if (!std::isfinite(A)) raise(ErrorKind::IntegrationFailure, "interior ODE produced a non-finite value");
        sol.x[i + 1] = (i + 1 == steps) ? Lambda : (i + 1) * h;
        sol.A[i + 1] = A;
    }
    return sol;
}

double contact_third_derivative(double A_at_Lambda, double h_at_Lambda) {
    require_positive_height(h_at_Lambda);
    return A_at_Lambda / (3.0 * h_at_Lambda);
}

double interior_flux(double A, double h) {
    require_positive_height(h);
    return A * h * h / 6.0;
}

double exterior_flux(double h, double hxxx) {
    require_positive_height(h);
    return h * h * h * hxxx / 3.0;
}

}  // namespace meniscus
