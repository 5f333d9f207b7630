/**
 * @file evolution.hpp
 * @brief Implicit time stepping of the film heights and the contact point.
 *
 * The film on (Lambda(t), R) is pulled back to the fixed grid [a, R] by the
 * linear map of FilmState. With J = (R - Lambda) / (R - a) the equation
 * h_t + (h^3 h_xxx)_x = S becomes the conservation law
 *
 *   d/dt (J H) + d/dxi Phi = J S,
 *   Phi = J^-3 H^3 H_xixixi - Lambda' (R - xi) / (R - a) H,
 *
 * discretized by node-centred control volumes (half volumes at the ends).
 * The contact closure H(a) = g(Lambda) is an extra equation for Lambda. The
 * left boundary face carries h^3 h_xxx = -2 Lambda g_t and the rate of the
 * solid volume (differenced with the same formula as the heights, so the total
 * mass is conserved exactly for a stationary solid); the right face carries
 * nothing. In half-line mode the last node is pinned to the far-field height.
 *
 * The first step uses BDF1, later steps variable-step BDF2. Newton's method
 * solves each step with a Jacobian built from dual-number evaluations of the
 * residual (five colours for the banded part, one pass for the Lambda column).
 */

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "meniscus/diagnostics.hpp"
#include "meniscus/equilibrium.hpp"
#include "meniscus/film_state.hpp"
#include "meniscus/solid_profile.hpp"

namespace meniscus {

enum class Scheme { BDF1, BDF2 };
enum class Mode { Periodic, Halfline };

struct StepperConfig {
    double dt = 1e-4;
    Scheme scheme = Scheme::BDF2;
    double newton_tol = 1e-10;
    int newton_maxit = 12;
    double dt_min = 1e-10;
    double dt_max = 1e-2;
    /// Successful steps before dt is doubled (towards dt_max).
    int grow_after = 5;
    /// An iterate with min H <= rupture_fraction * (initial min H) is a rupture.
    double rupture_fraction = 1e-6;

    void validate() const;
};

struct FilmProblem {
    SolidProfile profile = SolidProfile::stationary_polynomial({1.0});
    double k = 0.0;
    InterfaceEnergies energies;
    Mode mode = Mode::Periodic;
    double far_field = 1.0;
    int solid_intervals = kSolidIntervals;
    /// Optional source S(xi, t), xi the reference coordinate, added to the right side of h_t + (h^3 h_xxx)_x = S.
    std::function<double(double, double)> source;
};

/// Residual of one implicit step to next.t. previous, when given, selects
/// BDF2 with the step ratio implied by the three times. Rows 0..n-1 are the
/// node equations (scaled by dt, in height units), row n is H_0 - g(Lambda).
std::vector<double> assemble_residual(const FilmState& next, const FilmState& current, const FilmProblem& problem,
                                      const FilmState* previous = nullptr);

struct NewtonResult {
    FilmState state;
    int iterations = 0;
    double residual_norm = 0.0;
    double last_update = 0.0;
};

/// Solves for the state at current.t + dt. Raises NewtonDiverged, Rupture
/// (an iterate fell to rupture_floor) or MapDegenerate (Lambda >= R).
NewtonResult newton_solve(const FilmState& current, double dt, const FilmProblem& problem, const StepperConfig& cfg,
                          double rupture_floor, const FilmState* previous = nullptr);

/// (rate - g_t) / k, the contact velocity implied by d/dt h(Lambda, t) = g_t.
/// Raises ZeroContactAngle when k = 0.
double contact_velocity(const FilmState& state, double dHdt_at_contact, const SolidProfile& profile, double k);

/// h_t at the contact point, -(h^3 h_xxx)_x from the boundary flux and the
/// first two face fluxes (one-sided, second order).
double contact_height_rate(const FilmState& state, const FilmProblem& problem);

/// Stateful integrator: keeps the BDF2 history and the adaptive step size so
/// a run can be checkpointed and resumed bit for bit.
class Integrator {
public:
    Integrator(FilmState initial, FilmProblem problem, StepperConfig cfg);

    /// One accepted step, never past t_stop. Returns the Newton iterations used.
    int step(double t_stop);

    const FilmState& state() const noexcept { return current_; }
    const FilmProblem& problem() const noexcept { return problem_; }
    const StepperConfig& config() const noexcept { return cfg_; }
    double last_dt() const noexcept { return last_dt_; }

    struct Checkpoint {
        FilmState current;
        std::optional<FilmState> previous;
        double dt_next = 0.0;
        double last_dt = 0.0;
        int successes = 0;
        double rupture_floor = 0.0;
    };
    Checkpoint checkpoint() const;
    static Integrator resume(const Checkpoint& cp, FilmProblem problem, StepperConfig cfg);

private:
    FilmState current_;
    std::optional<FilmState> previous_;
    FilmProblem problem_;
    StepperConfig cfg_;
    double dt_next_ = 0.0;
    double last_dt_ = 0.0;
    int successes_ = 0;
    double rupture_floor_ = 0.0;
};

struct RunSummary {
    FilmState final_state;
    int steps = 0;
    int newton_iterations = 0;
};

using DiagnosticsSink = std::function<void(const DiagnosticsRecord&, const FilmState&)>;

/// Steps to t_end, emitting a record for the initial state and every accepted step.
RunSummary run(const FilmState& initial, const FilmProblem& problem, const StepperConfig& cfg, double t_end,
               const DiagnosticsSink& sink = {});
RunSummary run(Integrator& integrator, double t_end, const DiagnosticsSink& sink = {});

}  // namespace meniscus
