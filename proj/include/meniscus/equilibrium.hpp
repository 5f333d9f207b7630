/**
 * @file equilibrium.hpp
 * @brief Steady states of the symmetric film on (Lambda, L) under a stationary solid.
 *
 * The steady film is the parabola
 *   hbar(x) = coeff2 (x - L)^2 + apex,
 *   coeff2 = (g_x - k) / (2 (Lambda_bar - L)),  apex = g - (g_x - k)(Lambda_bar - L) / 2,
 * with g and g_x taken at Lambda_bar. It meets the solid at Lambda_bar with slope
 * g_x - k and is flat at the symmetry point L.
 */

#pragma once

#include <vector>

#include "meniscus/solid_profile.hpp"

namespace meniscus {

/// Liquid-solid (a), liquid-gas (b) and gas-solid (c) energy coefficients.
struct InterfaceEnergies {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;

    /// Raises EnergyConstraintViolation unless b > 0, a, c >= 0 and (b + c - a) / b > 0.
    void validate() const;
    /// sqrt((b + c - a) / b).
    double young_factor() const;
};

struct EquilibriumSolution {
    double Lambda_bar = 0.0;
    double L = 1.0;
    double coeff2 = 0.0;
    double apex = 1.0;
    double lambda = 0.0;  ///< Lagrange multiplier; set when energies are known
    double min_h = 1.0;

    double height(double x) const noexcept { return coeff2 * (x - L) * (x - L) + apex; }
    double slope(double x) const noexcept { return 2.0 * coeff2 * (x - L); }
    /// Integral of the parabola over (Lambda_bar, L).
    double film_volume() const noexcept;
};

/// Raises DegenerateFilm when the parabola is not positive on [Lambda_bar, L].
EquilibriumSolution steady_profile(const SolidProfile& profile, double k, double Lambda_bar, double L, double t = 0.0);

/// 2 b (g_x - k) / (L - Lambda_bar).
double lagrange_multiplier(const SolidProfile& profile, double k, double Lambda_bar, double L,
                           const InterfaceEnergies& energies, double t = 0.0);

/// k = sqrt((b + c - a) / b) g_x.
double young_angle(const InterfaceEnergies& energies, double gx);

/// Solid volume on (0, Lambda_bar) plus the steady film volume.
double equilibrium_volume(const SolidProfile& profile, double k, double Lambda_bar, double L, double t = 0.0);

struct EquilibriumRoots {
    std::vector<double> roots;  ///< ascending
    double Lambda_bar = 0.0;    ///< designated root (the smallest)
    bool nonmonotone = false;   ///< more than one root was found
};

/// All roots of equilibrium_volume(Lambda_bar) = V0 on [0, L], found by a
/// 10^3 point scan, bisection and secant polishing. Raises VolumeUnattainable.
EquilibriumRoots find_equilibrium_positions(double V0, const SolidProfile& profile, double k, double L,
                                            double t = 0.0);
double solve_equilibrium_position(double V0, const SolidProfile& profile, double k, double L, double t = 0.0);

}  // namespace meniscus
