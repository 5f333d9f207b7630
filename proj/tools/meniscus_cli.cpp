// Command-line front end: one subcommand per experiment.
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "meniscus/errors.hpp"
#include "meniscus/experiments.hpp"

using namespace meniscus;

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

bool is_config_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::ParseError:
        case ErrorKind::IoError:
        case ErrorKind::InvalidArgument:
        case ErrorKind::EnergyConstraintViolation:
        case ErrorKind::VolumeUnattainable:
        case ErrorKind::GridTooSmall:
            return true;
        default:
            return false;
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::IoError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_record(const char* label, const DiagnosticsRecord& r) {
    std::printf("%-6s t=%s mass=%s energy=%s dissipation=%s lambda=%s min_h=%s\n", label, format_double(r.t).c_str(),
                format_double(r.mass).c_str(), format_double(r.energy).c_str(), format_double(r.dissipation).c_str(),
                format_double(r.Lambda).c_str(), format_double(r.min_h).c_str());
}

int cmd_simulate(const RunConfig& cfg) {
    const auto rep = simulate(cfg);
    print_record("start", rep.first);
    print_record("end", rep.last);
    std::printf("steps=%d newton_iterations=%d\n", rep.summary.steps, rep.summary.newton_iterations);
    for (const auto& f : rep.files) std::printf("wrote %s\n", f.c_str());
    return 0;
}

int cmd_equilibrium(const RunConfig& cfg) {
    const auto rep = equilibrium_report(cfg);
    std::printf("k=%s\n", format_double(rep.k).c_str());
    std::printf("roots:");
    for (double r : rep.roots.roots) std::printf(" %s", format_double(r).c_str());
    std::printf("%s\n", rep.roots.nonmonotone ? "  (volume is not monotone in the contact point)" : "");
    const auto& s = rep.solution;
    std::printf("Lambda_bar=%s L=%s\n", format_double(s.Lambda_bar).c_str(), format_double(s.L).c_str());
    std::printf("h(x) = %s (x - L)^2 + %s\n", format_double(s.coeff2).c_str(), format_double(s.apex).c_str());
    std::printf("min_h=%s lambda=%s volume=%s\n", format_double(s.min_h).c_str(), format_double(s.lambda).c_str(),
                format_double(rep.volume).c_str());
    std::printf("discrete: residual=%s dissipation=%s newton_update=%s\n", format_double(rep.discrete_residual).c_str(),
                format_double(rep.dissipation).c_str(), format_double(rep.newton_update).c_str());

    std::filesystem::create_directories(cfg.output.dir);
    const auto path = (std::filesystem::path(cfg.output.dir) / "equilibrium.csv").string();
    std::ofstream out(path);
    if (!out) raise(ErrorKind::IoError, "cannot write " + path);
    out << "x,h\n";
    const int n = cfg.grid_n;
    for (int i = 0; i < n; ++i) {
        const double x = i == n - 1 ? s.L : s.Lambda_bar + i * (s.L - s.Lambda_bar) / (n - 1);
        out << format_double(x) << ',' << format_double(s.height(x)) << '\n';
    }
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_stability(const RunConfig& cfg) {
    const auto rep = stability_experiment(cfg);
    for (const auto& r : rep.runs) {
        std::printf("n=%d E*=%s Lambda*=%s energy_drop=%s\n", r.n, format_double(r.E_star).c_str(),
                    format_double(r.Lambda_star).c_str(), format_double(r.energy_drop).c_str());
        std::printf("  energy: omega=%s r2=%s\n", format_double(r.energy_fit.omega).c_str(),
                    format_double(r.energy_fit.r_squared).c_str());
        std::printf("  lambda: omega=%s r2=%s\n", format_double(r.lambda_fit.omega).c_str(),
                    format_double(r.lambda_fit.r_squared).c_str());
    }
    if (rep.runs.size() == 2)
        std::printf("relative omega change: energy=%s lambda=%s\n", format_double(rep.energy_omega_change).c_str(),
                    format_double(rep.lambda_omega_change).c_str());
    if (cfg.output.plots && !rep.runs.empty()) {
        std::filesystem::create_directories(cfg.output.dir);
        const auto& r = rep.runs.front();
        std::vector<std::pair<double, double>> e;
        for (const auto& rec : r.records) e.emplace_back(rec.t, rec.energy - r.E_star);
        const auto path = (std::filesystem::path(cfg.output.dir) / "stability_energy.svg").string();
        render_decay_plot(e, r.energy_fit, path, "E - E*");
        write_diag(r.records, (std::filesystem::path(cfg.output.dir) / "stability_diag.csv").string());
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}

int cmd_poincare(const RunConfig& cfg) {
    const auto rep = poincare_report(cfg);
    auto show = [](const char* label, const PoincareResult& r) {
        std::printf("%s n=%d mu=%s C=%s trace=%s spectrum:", label, r.n, format_double(r.mu).c_str(),
                    format_double(r.constant_C).c_str(), format_double(r.trace_constant).c_str());
        for (double s : r.spectrum) std::printf(" %s", format_double(s).c_str());
        std::printf("\n");
    };
    show("zero-mean", rep.coarse);
    show("zero-mean", rep.fine);
    show("no-mean  ", rep.unconstrained);
    std::printf("relative change=%s unconstrained/constrained=%s\n", format_double(rep.relative_change).c_str(),
                format_double(rep.unconstrained_fraction).c_str());
    return 0;
}

int cmd_convergence(const RunConfig& cfg) {
    const auto rep = convergence_study(cfg);
    std::printf("%6s %12s %14s %8s\n", "n", "dx", "error", "order");
    for (const auto& r : rep.rows)
        std::printf("%6d %12.6g %14.6e %8.4f\n", r.n, r.dx, r.error, r.order);
    std::printf("order range [%.4f, %.4f]\n", rep.min_order, rep.max_order);
    std::filesystem::create_directories(cfg.output.dir);
    const auto path = (std::filesystem::path(cfg.output.dir) / "convergence.csv").string();
    std::ofstream out(path);
    out << "n,dx,error,order\n";
    for (const auto& r : rep.rows)
        out << r.n << ',' << format_double(r.dx) << ',' << format_double(r.error) << ',' << format_double(r.order) << '\n';
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_nondim(const std::string& path) {
    const auto in = parse_nondim_input(read_text(path));
    const auto r = nondimensionalize(in.params, in.epsilon);
    std::printf("k=%s\nbeta_bar=%s\nlength_scale=%s\ntime_scale=%s\n", format_double(r.k).c_str(),
                format_double(r.beta_bar).c_str(), format_double(r.length_scale).c_str(),
                format_double(r.time_scale).c_str());
    for (const auto& w : r.warnings) std::fprintf(stderr, "%s\n", w.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thin-film solver with a moving contact point"};
    app.require_subcommand(1);
    std::string path;
    std::string out_dir;
    const char* names[] = {"simulate", "equilibrium", "stability", "poincare", "convergence"};
    const char* help[] = {"run a configuration and write diagnostics, snapshots and plots",
                          "equilibrium profile, contact point and discrete residual",
                          "perturbed run with exponential decay fits",
                          "discrete Poincare constant and its grid convergence",
                          "manufactured-solution grid refinement study"};
    for (int i = 0; i < 5; ++i) {
        auto* sub = app.add_subcommand(names[i], help[i]);
        sub->add_option("config", path, "JSON configuration")->required();
        sub->add_option("--out", out_dir, "override output.dir");
    }
    auto* nondim = app.add_subcommand("nondim", "scale physical parameters");
    nondim->add_option("params", path, "JSON with H, sigma, mu_L, theta, beta_phys, t0, epsilon")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    RunConfig cfg;
    try {
        if (cmd == "nondim") return cmd_nondim(path);
        cfg = load_config(path);
        if (!out_dir.empty()) cfg.output.dir = out_dir;
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kConfigError;
    }

    try {
        if (cmd == "simulate") return cmd_simulate(cfg);
        if (cmd == "equilibrium") return cmd_equilibrium(cfg);
        if (cmd == "stability") return cmd_stability(cfg);
        if (cmd == "poincare") return cmd_poincare(cfg);
        return cmd_convergence(cfg);
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return is_config_error(e.kind()) ? kConfigError : kRuntimeError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kRuntimeError;
    }
}
