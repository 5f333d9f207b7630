/**
 * @file diagnostics.hpp
 * @brief Mass, energy and dissipation of a film state, decay-rate fits and the
 *        discrete Poincare constant.
 *
 * All quadratures are composite trapezoid rules. Node derivatives use
 * centred differences inside and one-sided second-order differences at the
 * two end nodes, so they need no boundary closure.
 */

#pragma once

#include <utility>
#include <vector>

#include "meniscus/equilibrium.hpp"
#include "meniscus/film_state.hpp"
#include "meniscus/solid_profile.hpp"

namespace meniscus {

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double dissipation = 0.0;
    double Lambda = 0.0;
    double min_h = 0.0;
    int newton_iters = 0;
    double dt = 0.0;
};

/// Subintervals used for the solid integrals on (0, Lambda).
inline constexpr int kSolidIntervals = 512;

/// Integral of g over (0, Lambda) plus the film integral over (Lambda, b).
double total_mass(const FilmState& state, const SolidProfile& profile, int solid_intervals = kSolidIntervals);

/// a int_0^Lambda g_x^2 + b int_Lambda^b h_x^2 + c int_Lambda^b g_x^2.
double total_energy(const FilmState& state, const SolidProfile& profile, const InterfaceEnergies& energies,
                    int solid_intervals = kSolidIntervals);

/// 2 b int h^3 h_xxx^2 (non-negative). Raises DegenerateFilm when min H <= 0.
double dissipation_rate(const FilmState& state, double b);

/// First derivative at every node (centred inside, one-sided at the ends).
std::vector<double> node_slopes(const std::vector<double>& H, double dx);
/// Third derivative at every node (centred inside, one-sided near the ends).
std::vector<double> node_third_derivatives(const std::vector<double>& H, double dx);

DiagnosticsRecord make_record(const FilmState& state, const SolidProfile& profile, const InterfaceEnergies& energies,
                              int newton_iters, double dt);

struct DecayFit {
    double omega = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    Interval window;
};

/// Least squares fit of log(value) = log(prefactor) - omega t over the samples
/// whose time lies in window. Raises NonPositiveSeries for a value <= 0 and
/// InvalidArgument for fewer than 10 samples.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, Interval window = {});

struct PoincareOptions {
    bool zero_mean = true;
    int n_modes = 1;
};

struct PoincareResult {
    double mu = 0.0;                  ///< min of int |phi_xxx|^2 / int |phi_x|^2
    int n = 0;
    double constant_C = 0.0;          ///< 1 / mu
    double trace_constant = 0.0;      ///< max |phi(a)|^2 / int |phi_xxx|^2 (zero-mean case only)
    std::vector<double> spectrum;     ///< the n_modes smallest quotients
};

/// Constrained Rayleigh quotient on the grid with phi_x(a) = bc_ratio phi(a),
/// phi_x(b) = 0 and (optionally) zero mean. Raises SingularConstraint.
PoincareResult discrete_poincare(const Grid& grid, double bc_ratio, const PoincareOptions& options = {});

/// Steady parabola sampled on the reference grid of a state with contact
/// point Lambda (the map sends grid.a to Lambda).
FilmState sampled_steady_state(const SolidProfile& profile, double k, const Grid& grid, double Lambda,
                               double t = 0.0);

/// Contact point at which the sampled steady state has the given discrete mass
/// (secant iteration from guess, bracketed by bisection).
FilmState discrete_steady_state(const SolidProfile& profile, double k, const Grid& grid, double target_mass,
                                double guess, double t = 0.0);

}  // namespace meniscus
