/**
 * @file cli_io.hpp
 * @brief Run configuration, output formats and nondimensionalization.
 *
 * Configuration is a strict JSON document: unknown keys are rejected with a
 * ParseError naming the offending key. Diagnostics are CSV with shortest
 * round-trip decimals; snapshots are JSON and carry the integrator history so
 * a resumed run reproduces the uninterrupted one.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meniscus/diagnostics.hpp"
#include "meniscus/evolution.hpp"

namespace meniscus {

struct ProfileConfig {
    std::string kind = "wedge";  ///< constant_descent | wedge | polynomial | stationary
    double H0 = 1.0, t0 = 1.0, n = 1.0;          // constant_descent
    std::vector<double> htilde{1.0};             // wedge: time polynomial of the apex height
    double c = 0.0;                              // wedge slope
    std::vector<double> coeffs{1.0};             // polynomial / stationary: coefficients in x
    std::vector<double> descent{0.0};            // polynomial: time polynomial added to g

    bool operator==(const ProfileConfig&) const = default;
};

struct InitialConfig {
    std::string kind = "steady";  ///< steady | perturbed | explicit | meniscus
    double eps = 0.0;
    std::string mode_shape = "1";  ///< mode number m >= 1, or "random"
    std::string path;

    bool operator==(const InitialConfig&) const = default;
};

struct OutputConfig {
    std::string dir = "out";
    int snapshot_stride = 0;  ///< 0 writes only the final snapshot
    bool plots = true;

    bool operator==(const OutputConfig&) const = default;
};

struct StabilityConfig {
    double fit_start = 0.5;  ///< fit window starts at this fraction of t_end
    bool refine = true;      ///< repeat on the grid with 2 n - 1 nodes

    bool operator==(const StabilityConfig&) const = default;
};

struct PoincareConfig {
    int n = 200;
    double bc_ratio = 1.0;
    double a = 0.0;
    double b = 1.0;
    int n_modes = 3;

    bool operator==(const PoincareConfig&) const = default;
};

struct ConvergenceConfig {
    std::vector<int> grids{51, 101, 201, 401};
    double velocity = 0.05;
    double amplitude = 0.002;

    bool operator==(const ConvergenceConfig&) const = default;
};

struct RunConfig {
    Mode mode = Mode::Periodic;
    ProfileConfig profile;
    std::optional<double> k;  ///< empty: derived from the energies by Young's relation
    InterfaceEnergies energies;
    double L = 2.0;
    double X_max = 20.0;
    int grid_n = 201;
    StepperConfig stepper;
    double t_end = 1.0;
    InitialConfig initial;
    std::uint64_t seed = 0;
    std::optional<double> Lambda_bar;
    std::optional<double> V0;
    double Lambda0 = 0.0;
    OutputConfig output;
    StabilityConfig stability;
    PoincareConfig poincare;
    ConvergenceConfig convergence;

    bool operator==(const RunConfig& o) const;
};

RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);
RunConfig load_config(const std::string& path);

SolidProfile build_profile(const ProfileConfig& p);
/// Reference contact point: Lambda_bar (or the root for V0) in periodic mode, Lambda0 in half-line mode.
double reference_contact_point(const RunConfig& cfg, const SolidProfile& profile);
double resolve_contact_angle(const RunConfig& cfg, const SolidProfile& profile, double Lambda);
FilmProblem build_problem(const RunConfig& cfg);
Grid build_grid(const RunConfig& cfg, const FilmProblem& problem);
FilmState build_initial_state(const RunConfig& cfg, const FilmProblem& problem);

/// eps (cos(m pi y) - cos((m + 1) pi y)), y = (xi - a) / (b - a): zero mean,
/// zero at the contact point, zero first and third derivatives at both ends.
std::vector<double> perturbation_mode(const Grid& grid, int m, double eps);
/// Seeded random combination of modes 1..4 with max amplitude eps.
std::vector<double> random_perturbation(const Grid& grid, double eps, std::uint64_t seed);

/// Shortest round-trip decimal.
std::string format_double(double v);

class DiagnosticsWriter {
public:
    explicit DiagnosticsWriter(const std::string& path);
    void write(const DiagnosticsRecord& r);

private:
    std::string path_;
};
void write_diag(const std::vector<DiagnosticsRecord>& records, const std::string& path);
std::vector<DiagnosticsRecord> read_diag(const std::string& path);

void write_snapshot(const Integrator::Checkpoint& cp, const std::string& path);
void write_snapshot(const FilmState& state, const std::string& path);
Integrator::Checkpoint read_snapshot(const std::string& path);

struct ProfileCurve {
    std::string label;
    std::vector<double> x, h;
};
void render_profile_plot(const std::vector<ProfileCurve>& curves, const std::string& path);
/// log10(value) against t, with an optional fitted line prefactor exp(-omega t).
void render_decay_plot(const std::vector<std::pair<double, double>>& series, const std::optional<DecayFit>& fit,
                       const std::string& path, const std::string& ylabel);

struct PhysicalParams {
    double H = 1e-3;       ///< film thickness
    double sigma = 1.0;    ///< surface tension (scaled)
    double mu_L = 1.0;     ///< viscosity
    double theta = 0.01;   ///< angle deficit (rad)
    double beta_phys = 0;  ///< slip coefficient
    double t0 = 1.0;       ///< solid time scale
};

struct NondimResult {
    double k = 0.0;
    double beta_bar = 0.0;
    double time_scale = 0.0;
    double length_scale = 0.0;
    std::vector<std::string> warnings;  ///< ValidityWarning messages (non-fatal)
};

NondimResult nondimensionalize(const PhysicalParams& p, double epsilon);
struct NondimInput {
    PhysicalParams params;
    double epsilon = 0.1;
};
/// Strict JSON with the PhysicalParams fields plus "epsilon".
NondimInput parse_nondim_input(const std::string& text);

}  // namespace meniscus
