/**
 * @file domain_transform.hpp
 * @brief Moving-to-fixed coordinate maps and the contact-point boundary data.
 *
 * Two maps pull the moving film domain back to a fixed one:
 *  - LinearMap sends (Lambda, L) affinely onto (Lambda_bar, L); the evolution
 *    solver works in these coordinates.
 *  - CutoffMap is the localized map x -> x - Lambda xi_delta(x - Lambda),
 *    which moves only a 2 delta neighbourhood of the contact point.
 *
 * The cutoff is xi_delta(s) = S((2 delta - s) / delta) with the smoothstep
 * S(r) = phi(r) / (phi(r) + phi(1 - r)), phi(r) = exp(-1/r) for r > 0.
 * It is exactly 1 on [0, delta] and exactly 0 on [2 delta, inf).
 */

#pragma once

#include <vector>

#include "meniscus/grid.hpp"
#include "meniscus/solid_profile.hpp"

namespace meniscus {

struct LinearMap {
    double Lambda = 0.0;
    double Lambda_bar = 0.0;
    double L = 1.0;

    /// Raises MapDegenerate unless Lambda < L and Lambda_bar < L.
    void validate() const;
    /// (L - Lambda_bar) / (L - Lambda).
    double jacobian() const noexcept { return (L - Lambda_bar) / (L - Lambda); }
};

double linear_map(double x, const LinearMap& map);
double linear_map_inverse(double xbar, const LinearMap& map);

struct LinearMapRates {
    double dxbar_dx = 1.0;
    double dxbar_dt = 0.0;
};
LinearMapRates linear_map_rates(const LinearMap& map, double Lambda_dot, double x);

/// Smooth cutoff xi_delta and its derivative.
double cutoff(double s, double delta);
double cutoff_derivative(double s, double delta);
/// sup |xi_delta'| * delta for the smoothstep above (independent of delta).
double cutoff_slope_constant();

struct CutoffMap {
    double delta = 0.1;
    double Lambda = 0.0;

    /// Raises ConstraintViolation when |Lambda| > delta^2.
    void validate() const;
};

/// Q_Lambda(x) = (x - Lambda) xi(x - Lambda) + x (1 - xi(x - Lambda)).
double cutoff_map(double x, const CutoffMap& map);
/// dQ_Lambda/dx = 1 - Lambda xi'(x - Lambda).
double cutoff_map_derivative(double x, const CutoffMap& map);

struct BoundaryData {
    double psi1 = 0.0;  ///< film height at the contact point, g(Lambda, t)
    double psi2 = 0.0;  ///< film slope, g_x(Lambda, t) - k
    double psi3 = 0.0;  ///< third derivative, -2 Lambda g_t / g^3
};

BoundaryData boundary_data(const SolidProfile& profile, double Lambda, double t, double k);

/// U = H - a xi_delta - (1 - xi_delta) with a = psi2 x + psi3 x^3, on a grid starting at 0.
std::vector<double> lift_profile(const std::vector<double>& H, const Grid& grid, const BoundaryData& data,
                                 double delta);
/// Inverse of lift_profile.
std::vector<double> unlift_profile(const std::vector<double>& U, const Grid& grid, const BoundaryData& data,
                                   double delta);

}  // namespace meniscus
