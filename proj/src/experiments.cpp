#include "meniscus/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "meniscus/errors.hpp"

namespace meniscus {

namespace fs = std::filesystem;

namespace {

std::vector<double> physical_nodes(const FilmState& s) {
    std::vector<double> x(s.grid.n);
    for (int i = 0; i < s.grid.n; ++i) x[i] = s.physical_x(i);
    return x;
}

ProfileCurve curve(const std::string& label, const FilmState& s) { return {label, physical_nodes(s), s.H}; }

std::string numbered(const fs::path& dir, const char* stem, int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s_%06d.json", stem, k);
    return (dir / buf).string();
}

void require_periodic(const RunConfig& cfg, const char* what) {
    if (cfg.mode != Mode::Periodic) raise(ErrorKind::InvalidArgument, std::string(what) + " needs periodic mode");
}

// p0 + p1 y + alpha y^2 + beta y^4 + gamma y^5 on y in [0, l], with p'(l) = p'''(0) = 0.
struct Quintic {
    double p0, p1, alpha, beta, gamma;

    static Quintic make(double p0, double p1, double gamma, double l) {
        const double beta = -2.5 * gamma * l;
        const double alpha = -(p1 + 4.0 * beta * l * l * l + 5.0 * gamma * l * l * l * l) / (2.0 * l);
        return {p0, p1, alpha, beta, gamma};
    }
    double v(double y) const { return p0 + y * (p1 + y * (alpha + y * y * (beta + y * gamma))); }
    double d1(double y) const { return p1 + 2.0 * alpha * y + y * y * y * (4.0 * beta + 5.0 * gamma * y); }
    double d3(double y) const { return y * (24.0 * beta + 60.0 * gamma * y); }
    double d4(double y) const { return 24.0 * beta + 120.0 * gamma * y; }
};

}  // namespace

SimulateReport simulate(const RunConfig& cfg) {
    const FilmProblem problem = build_problem(cfg);
    const FilmState initial = build_initial_state(cfg, problem);
    const fs::path dir(cfg.output.dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) raise(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());

    SimulateReport rep;
    auto add = [&](const std::string& p) { rep.files.push_back(p); return p; };
    write_snapshot(initial, add((dir / "initial.json").string()));

    Integrator it(initial, problem, cfg.stepper);
    rep.first = make_record(initial, problem.profile, problem.energies, 0, 0.0);
    rep.last = rep.first;
    DiagnosticsWriter diag(add((dir / "diag.csv").string()));
    std::vector<std::pair<double, double>> energy;
    energy.emplace_back(rep.first.t, rep.first.energy);
    while (it.state().t < cfg.t_end) {
        const int iters = it.step(cfg.t_end);
        ++rep.summary.steps;
        rep.summary.newton_iterations += iters;
        rep.last = make_record(it.state(), problem.profile, problem.energies, iters, it.last_dt());
        diag.write(rep.last);
        energy.emplace_back(rep.last.t, rep.last.energy);
        if (cfg.output.snapshot_stride > 0 && rep.summary.steps % cfg.output.snapshot_stride == 0)
            write_snapshot(it.checkpoint(), add(numbered(dir, "snapshot", rep.summary.steps)));
    }
    rep.summary.final_state = it.state();
    write_snapshot(it.checkpoint(), add((dir / "final.json").string()));

    if (cfg.output.plots) {
        render_profile_plot({curve("t = 0", initial), curve("t = " + format_double(it.state().t), it.state())},
                            add((dir / "profile.svg").string()));
        // Energy above its final value, so a decaying run is a straight line.
        std::vector<std::pair<double, double>> excess;
        for (const auto& [t, e] : energy) excess.emplace_back(t, e - rep.last.energy);
        render_decay_plot(excess, std::nullopt, add((dir / "energy.svg").string()), "E - E(t_end)");
    }
    return rep;
}

EquilibriumReport equilibrium_report(const RunConfig& cfg) {
    require_periodic(cfg, "equilibrium");
    const FilmProblem problem = build_problem(cfg);
    EquilibriumReport rep;
    rep.k = problem.k;
    if (cfg.V0) {
        rep.roots = find_equilibrium_positions(*cfg.V0, problem.profile, rep.k, cfg.L);
        rep.roots.Lambda_bar = reference_contact_point(cfg, problem.profile);
    } else {
        rep.roots.roots = {*cfg.Lambda_bar};
        rep.roots.Lambda_bar = *cfg.Lambda_bar;
    }
    const double Lb = rep.roots.Lambda_bar;
    rep.solution = steady_profile(problem.profile, rep.k, Lb, cfg.L);
    rep.solution.lambda = lagrange_multiplier(problem.profile, rep.k, Lb, cfg.L, cfg.energies);
    rep.volume = equilibrium_volume(problem.profile, rep.k, Lb, cfg.L);

    const Grid grid = build_grid(cfg, problem);
    const FilmState s = sampled_steady_state(problem.profile, rep.k, grid, Lb);
    FilmState next = s;
    next.t += cfg.stepper.dt;
    for (double r : assemble_residual(next, s, problem)) rep.discrete_residual = std::max(rep.discrete_residual, std::abs(r));
    rep.dissipation = dissipation_rate(s, cfg.energies.b);
    const auto nr = newton_solve(s, cfg.stepper.dt, problem, cfg.stepper, cfg.stepper.rupture_fraction * s.min_h());
    rep.newton_update = std::abs(nr.state.Lambda - s.Lambda);
    for (int i = 0; i < grid.n; ++i) rep.newton_update = std::max(rep.newton_update, std::abs(nr.state.H[i] - s.H[i]));
    return rep;
}

StabilityReport stability_experiment(const RunConfig& cfg) {
    require_periodic(cfg, "stability");
    StabilityReport rep;
    std::vector<int> grids{cfg.grid_n};
    if (cfg.stability.refine) grids.push_back(2 * cfg.grid_n - 1);
    const Interval window{cfg.stability.fit_start * cfg.t_end, cfg.t_end};
    for (int n : grids) {
        RunConfig c = cfg;
        c.grid_n = n;
        const FilmProblem problem = build_problem(c);
        const FilmState initial = build_initial_state(c, problem);
        StabilityRun r;
        r.n = n;
        const FilmState eq = discrete_steady_state(problem.profile, problem.k, initial.grid,
                                                   total_mass(initial, problem.profile), initial.Lambda);
        r.E_star = total_energy(eq, problem.profile, problem.energies);
        r.Lambda_star = eq.Lambda;
        run(initial, problem, c.stepper, c.t_end,
            [&](const DiagnosticsRecord& rec, const FilmState&) { r.records.push_back(rec); });
        std::vector<std::pair<double, double>> e, l;
        for (const auto& rec : r.records) {
            e.emplace_back(rec.t, rec.energy - r.E_star);
            l.emplace_back(rec.t, std::abs(rec.Lambda - r.Lambda_star));
        }
        r.energy_drop = e.front().second / e.back().second;
        r.energy_fit = fit_decay(e, window);
        r.lambda_fit = fit_decay(l, window);
        rep.runs.push_back(std::move(r));
    }
    if (rep.runs.size() == 2) {
        const auto& a = rep.runs[0];
        const auto& b = rep.runs[1];
        rep.energy_omega_change = std::abs(b.energy_fit.omega - a.energy_fit.omega) / std::abs(b.energy_fit.omega);
        rep.lambda_omega_change = std::abs(b.lambda_fit.omega - a.lambda_fit.omega) / std::abs(b.lambda_fit.omega);
    }
    return rep;
}

ConvergenceReport convergence_study(const RunConfig& cfg) {
    require_periodic(cfg, "convergence");
    if (cfg.profile.kind != "wedge")
        raise(ErrorKind::InvalidArgument, "the manufactured solution is built for a wedge profile");
    if (std::any_of(cfg.profile.htilde.begin() + 1, cfg.profile.htilde.end(), [](double c) { return c != 0.0; }))
        raise(ErrorKind::InvalidArgument, "the manufactured solution needs a constant apex height");
    if (cfg.convergence.grids.size() < 2) raise(ErrorKind::InvalidArgument, "convergence needs at least two grids");

    FilmProblem problem = build_problem(cfg);
    const double a = reference_contact_point(cfg, problem.profile);
    const double R = cfg.L;
    const double l = R - a;
    const double cw = cfg.profile.c;
    const double k = problem.k;
    const double v = cfg.convergence.velocity;
    const double g0 = eval_g(problem.profile, a, 0.0);
    // Contact height and slope conditions hold at every t because Lambda moves along the wedge.
    const Quintic P = Quintic::make(g0, (cw - k) * (R - a) / l, cfg.convergence.amplitude, l);
    const Quintic Q = Quintic::make(cw * v, -(cw - k) * v / l, -0.5 * cfg.convergence.amplitude, l);
    auto contact = [=](double t) { return a + v * t; };
    auto exact = [=](double xi, double t) { return P.v(xi - a) + t * Q.v(xi - a); };
    problem.source = [=](double xi, double t) {
        const double y = xi - a;
        const double J = (R - contact(t)) / l;
        const double s = 1.0 / J;
        const double H = P.v(y) + t * Q.v(y);
        const double H1 = P.d1(y) + t * Q.d1(y);
        const double H3 = P.d3(y) + t * Q.d3(y);
        const double H4 = P.d4(y) + t * Q.d4(y);
        const double dJH = -v / l * H + J * Q.v(y);
        const double dflux = s * s * s * (3.0 * H * H * H1 * H3 + H * H * H * H4) - v * (-H + (R - xi) * H1) / l;
        return (dJH + dflux) / J;
    };

    const double dt = cfg.stepper.dt;
    ConvergenceReport rep;
    for (int n : cfg.convergence.grids) {
        const Grid grid(n, a, R);
        FilmState before{grid, {}, contact(-dt), -dt};
        FilmState start{grid, {}, contact(0.0), 0.0};
        for (int i = 0; i < n; ++i) {
            before.H.push_back(exact(grid.node(i), -dt));
            start.H.push_back(exact(grid.node(i), 0.0));
        }
        // Exact history at -dt lets the first step use BDF2 as well.
        Integrator::Checkpoint cp{start, before, dt, dt, 0, cfg.stepper.rupture_fraction * start.min_h()};
        auto it = Integrator::resume(cp, problem, cfg.stepper);
        const FilmState fin = run(it, cfg.t_end).final_state;
        ConvergenceRow row;
        row.n = n;
        row.dx = grid.dx();
        row.error = std::abs(fin.Lambda - contact(fin.t));
        for (int i = 0; i < n; ++i) row.error = std::max(row.error, std::abs(fin.H[i] - exact(grid.node(i), fin.t)));
        if (!rep.rows.empty()) row.order = std::log(rep.rows.back().error / row.error) / std::log(rep.rows.back().dx / row.dx);
        rep.rows.push_back(row);
    }
    rep.min_order = rep.rows[1].order;
    rep.max_order = rep.rows[1].order;
    for (std::size_t i = 2; i < rep.rows.size(); ++i) {
        rep.min_order = std::min(rep.min_order, rep.rows[i].order);
        rep.max_order = std::max(rep.max_order, rep.rows[i].order);
    }
    return rep;
}

PoincareReport poincare_report(const RunConfig& cfg) {
    const auto& pc = cfg.poincare;
    PoincareOptions opt;
    opt.n_modes = pc.n_modes;
    PoincareReport rep;
    rep.coarse = discrete_poincare(Grid(pc.n, pc.a, pc.b), pc.bc_ratio, opt);
    rep.fine = discrete_poincare(Grid(2 * pc.n, pc.a, pc.b), pc.bc_ratio, opt);
    opt.zero_mean = false;
    rep.unconstrained = discrete_poincare(Grid(pc.n, pc.a, pc.b), pc.bc_ratio, opt);
    rep.relative_change = std::abs(rep.fine.mu - rep.coarse.mu) / std::abs(rep.coarse.mu);
    rep.unconstrained_fraction = rep.unconstrained.mu / rep.coarse.mu;
    return rep;
}

}  // namespace meniscus
