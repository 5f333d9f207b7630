/**
 * @file experiments.hpp
 * @brief Experiment drivers behind the CLI subcommands.
 *
 * Each driver takes a RunConfig and returns a plain report; the CLI formats it
 * and the acceptance tests read the numbers directly.
 */

#pragma once

#include <string>
#include <vector>

#include "meniscus/cli_io.hpp"

namespace meniscus {

struct SimulateReport {
    RunSummary summary;
    DiagnosticsRecord first, last;
    std::vector<std::string> files;  ///< everything written under output.dir
};

/// Runs cfg to t_end, writing diag.csv, snapshots and (optionally) plots.
SimulateReport simulate(const RunConfig& cfg);

struct EquilibriumReport {
    EquilibriumRoots roots;   ///< all roots when V0 is given, the single Lambda_bar otherwise
    EquilibriumSolution solution;
    double k = 0.0;
    double volume = 0.0;            ///< total volume of the continuous equilibrium
    double discrete_residual = 0.0; ///< max |row| of one implicit step from the sampled state to itself
    double dissipation = 0.0;       ///< discrete dissipation of the sampled state
    double newton_update = 0.0;     ///< size of the Newton correction from the sampled state
};

/// Periodic mode only.
EquilibriumReport equilibrium_report(const RunConfig& cfg);

struct StabilityRun {
    int n = 0;
    double E_star = 0.0;       ///< energy of the discrete equilibrium with the initial mass
    double Lambda_star = 0.0;
    double energy_drop = 0.0;  ///< (E(0) - E*) / (E(t_end) - E*)
    DecayFit energy_fit, lambda_fit;
    std::vector<DiagnosticsRecord> records;
};

struct StabilityReport {
    std::vector<StabilityRun> runs;  ///< cfg.grid_n, then 2 grid_n - 1 when refine is set
    double energy_omega_change = 0.0;  ///< relative change of the energy rate between the two grids
    double lambda_omega_change = 0.0;
};

/// Perturbed periodic run; fits E - E* and |Lambda - Lambda*| on [fit_start t_end, t_end].
StabilityReport stability_experiment(const RunConfig& cfg);

struct ConvergenceRow {
    int n = 0;
    double dx = 0.0;
    double error = 0.0;  ///< max over heights and Lambda at t_end
    double order = 0.0;  ///< log2 against the previous row (0 for the first)
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    double min_order = 0.0, max_order = 0.0;
};

/// Manufactured-solution grid study on a wedge with constant apex height.
/// The exact film is quintic in xi - a with linear time dependence and the
/// contact point moves at convergence.velocity.
ConvergenceReport convergence_study(const RunConfig& cfg);

/// Poincare constant at poincare.n and 2 poincare.n (with and without the zero-mean constraint at n).
struct PoincareReport {
    PoincareResult coarse, fine, unconstrained;
    double relative_change = 0.0;
    double unconstrained_fraction = 0.0;  ///< mu without / mu with the zero-mean constraint
};
PoincareReport poincare_report(const RunConfig& cfg);

}  // namespace meniscus
