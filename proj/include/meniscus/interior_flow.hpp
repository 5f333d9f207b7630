/**
 * @file interior_flow.hpp
 * @brief Squeeze flow under the solid and the flux exchanged at the contact point.
 *
 * In the region 0 < x < Lambda the horizontal velocity is u = A y (1 - y/g)
 * (no slip). The velocity coefficient A solves
 *
 *   A_x + r1 A + r2 = 0,  A(0) = 0,
 *
 * with r1 = 2 g_x / g, r2 = 6 g_t / g^2 for no slip, and the slip-dependent
 * rational coefficients for a finite slip coefficient beta.
 */

#pragma once

#include <vector>

#include "meniscus/solid_profile.hpp"

namespace meniscus {

/// Navier slip coefficient; `no_slip()` stands for beta = infinity.
class SlipCoefficient {
public:
    static SlipCoefficient no_slip() noexcept { return SlipCoefficient(); }
    static SlipCoefficient finite(double beta);

    bool is_no_slip() const noexcept { return no_slip_; }
    double beta() const noexcept { return beta_; }

private:
    SlipCoefficient() = default;
    bool no_slip_ = true;
    double beta_ = 0.0;
};

struct InteriorSolution {
    std::vector<double> x;
    std::vector<double> A;
    SlipCoefficient slip = SlipCoefficient::no_slip();
    double t = 0.0;
};

/// Explicit no-slip solution A = -6 x g_t / g^2 (valid because g_xt = 0).
double solve_A_noslip(const SolidProfile& profile, double x, double t);

/// Coefficients (r1, r2) of the interior ODE at (x, t).
struct InteriorCoefficients {
    double r1 = 0.0;
    double r2 = 0.0;
};
InteriorCoefficients interior_coefficients(const SolidProfile& profile, const SlipCoefficient& slip, double x, double t);

/// Classical RK4 with `steps` uniform steps on [0, Lambda]; returns steps + 1 samples.
InteriorSolution solve_A_slip(const SolidProfile& profile, const SlipCoefficient& slip, double Lambda, double t,
                              int steps = 512);

/// Third derivative imposed at the contact point: h_xxx = A / (3 h).
double contact_third_derivative(double A_at_Lambda, double h_at_Lambda);

/// Flux leaving the interior region: A h^2 / 6.
double interior_flux(double A, double h);

/// Lubrication flux of the exterior film: h^3 h_xxx / 3.
double exterior_flux(double h, double hxxx);

}  // namespace meniscus
