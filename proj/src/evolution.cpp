#include "meniscus/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "meniscus/dual.hpp"
#include "meniscus/errors.hpp"
#include "meniscus/spatial_disc.hpp"

namespace meniscus {

namespace {

constexpr int kColours = 5;

/// Lambda-dependent boundary quantities and their derivatives in Lambda.
struct BoundaryTerms {
    double g = 0.0, dg = 0.0;          // g(Lambda)
    double vol = 0.0, dvol = 0.0;      // trapezoid solid volume on (0, Lambda)
    double slope = 0.0, dslope = 0.0;  // g_x - k
    double third = 0.0, dthird = 0.0;  // -2 Lambda g_t / g^3
    double flux = 0.0, dflux = 0.0;    // h^3 h_xxx = -2 Lambda g_t
};

BoundaryTerms boundary_terms(const FilmProblem& p, double Lambda, double t) {
    BoundaryTerms b;
    b.g = eval_g(p.profile, Lambda, t);
    if (!(b.g > 0.0)) raise(ErrorKind::ProfileViolation, "solid height at the contact point must be positive");
    const auto d = eval_g_derivs_onesided(p.profile, Lambda, t, Side::Right);
    b.dg = d.gx;
    std::tie(b.vol, b.dvol) = trapezoid_solid_volume(p.profile, Lambda, t, p.solid_intervals);
    b.slope = d.gx - p.k;
    b.dslope = d.gxx;
    const double g3 = b.g * b.g * b.g;
    b.third = -2.0 * Lambda * d.gt / g3;
    b.dthird = -2.0 * d.gt / g3 + 6.0 * Lambda * d.gt * d.gx / (g3 * b.g);
    b.flux = -2.0 * Lambda * d.gt;
    b.dflux = -2.0 * d.gt;
    return b;
}

struct StepData {
    const Grid* grid = nullptr;
    const FilmProblem* problem = nullptr;
    double t_new = 0.0;
    double dt = 0.0;
    double c0 = 1.0;
    std::vector<double> hist;  // c1 J_n H_n + c2 J_{n-1} H_{n-1}
    double lam_hist = 0.0;     // c1 Lambda_n + c2 Lambda_{n-1}
    double vol_hist = 0.0;     // same combination of the solid volume, all at t_new
    std::vector<double> source;
};

StepData make_step_data(const FilmState& current, const FilmState* previous, const FilmProblem& problem,
                        double dt) {
    StepData d;
    d.grid = &current.grid;
    d.problem = &problem;
    d.dt = dt;
    d.t_new = current.t + dt;
    const int n = current.grid.n;
    double c1 = -1.0, c2 = 0.0;
    if (previous) {
        if (previous->grid.n != n) raise(ErrorKind::InvalidArgument, "history states live on different grids");
        const double w = dt / (current.t - previous->t);
        d.c0 = (1.0 + 2.0 * w) / (1.0 + w);
        c1 = -(1.0 + w);
        c2 = w * w / (1.0 + w);
    }
    const int N = problem.solid_intervals;
    d.hist.assign(n, 0.0);
    const double Jn = current.jacobian();
    for (int i = 0; i < n; ++i) d.hist[i] = c1 * Jn * current.H[i];
    d.lam_hist = c1 * current.Lambda;
    d.vol_hist = c1 * trapezoid_solid_volume(problem.profile, current.Lambda, d.t_new, N).first;
    if (previous) {
        const double Jp = previous->jacobian();
        for (int i = 0; i < n; ++i) d.hist[i] += c2 * Jp * previous->H[i];
        d.lam_hist += c2 * previous->Lambda;
        d.vol_hist += c2 * trapezoid_solid_volume(problem.profile, previous->Lambda, d.t_new, N).first;
    }
    d.source.assign(n, 0.0);
    if (problem.source)
        for (int i = 0; i < n; ++i) d.source[i] = dt * problem.source(current.grid.node(i), d.t_new);
    return d;
}

template <class T>
std::vector<T> residual_kernel(const std::vector<T>& H, const T& Lam, const StepData& d, const BoundaryTerms& b) {
    const Grid& grid = *d.grid;
    const int n = grid.n;
    const double dxi = grid.dx();
    const double a = grid.a;
    const double R = grid.b;

    const T J = (R - Lam) / (R - a);
    const T s = (R - a) / (R - Lam);
    const T s3 = s * s * s;

    GhostClosureT<T> closure;
    closure.left_slope = chain(Lam, b.slope, b.dslope) * J;
    closure.left_third = chain(Lam, b.third, b.dthird) * J * J * J;
    const auto ext = extend_with_ghosts(H, assemble_ghosts(H, dxi, closure));
    const auto F = face_fluxes(H, ext, dxi);

    const T dlam = d.c0 * Lam + d.lam_hist;
    const T dvol = d.c0 * chain(Lam, b.vol, b.dvol) + d.vol_hist;

    // dt * Phi at faces -1/2 .. n-1/2.
    std::vector<T> phi(n + 1);
    phi[0] = d.dt * chain(Lam, b.flux, b.dflux) - dvol;
    for (int i = 0; i < n - 1; ++i) {
        const double xi_face = a + (i + 0.5) * dxi;
        phi[i + 1] = d.dt * s3 * F[i] - dlam * ((R - xi_face) / (R - a)) * (0.5 * (H[i] + H[i + 1]));
    }
    phi[n] = T(0.0);

    std::vector<T> r(n + 1);
    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 * dxi : dxi;
        r[i] = (d.c0 * J * H[i] + d.hist[i]) / J + (phi[i + 1] - phi[i]) / (w * J) - d.source[i];
    }
    if (d.problem->mode == Mode::Halfline) r[n - 1] = H[n - 1] - d.problem->far_field;
    r[n] = H[0] - chain(Lam, b.g, b.dg);
    return r;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

GhostClosure state_closure(const FilmState& state, const FilmProblem& problem) {
    const auto b = boundary_terms(problem, state.Lambda, state.t);
    const double J = state.jacobian();
    GhostClosure c;
    c.left_slope = b.slope * J;
    c.left_third = b.third * J * J * J;
    c.left_flux = b.flux;
    return c;
}

}  // namespace

void StepperConfig::validate() const {
    if (!(dt > 0.0)) raise(ErrorKind::InvalidArgument, "dt must be positive");
    if (!(newton_tol > 0.0)) raise(ErrorKind::InvalidArgument, "newton_tol must be positive");
    if (newton_maxit < 1) raise(ErrorKind::InvalidArgument, "newton_maxit must be at least 1");
    if (!(dt_min > 0.0) || !(dt_min <= dt) || !(dt <= dt_max))
        raise(ErrorKind::InvalidArgument, "step sizes must satisfy 0 < dt_min <= dt <= dt_max");
}

std::vector<double> assemble_residual(const FilmState& next, const FilmState& current, const FilmProblem& problem,
                                      const FilmState* previous) {
    if (next.grid.n != current.grid.n) raise(ErrorKind::InvalidArgument, "states live on different grids");
    if (!(next.Lambda < next.grid.b)) raise(ErrorKind::MapDegenerate, "contact point reached the right end");
    if (!(next.min_h() > 0.0)) raise(ErrorKind::DegenerateFilm, "film height must stay positive");
    const double dt = next.t - current.t;
    if (!(dt > 0.0)) raise(ErrorKind::InvalidArgument, "next state must lie after the current one");
    const auto data = make_step_data(current, previous, problem, dt);
    const auto b = boundary_terms(problem, next.Lambda, data.t_new);
    return residual_kernel<double>(next.H, next.Lambda, data, b);
}

NewtonResult newton_solve(const FilmState& current, double dt, const FilmProblem& problem, const StepperConfig& cfg,
                          double rupture_floor, const FilmState* previous) {
    const Grid& grid = current.grid;
    const int n = grid.n;
    const int N = n + 1;
    const auto data = make_step_data(current, previous, problem, dt);

    std::vector<double> H = current.H;
    double Lam = current.Lambda;
    std::vector<Dual> Hd(n);

    Eigen::SparseMatrix<double> jac(N, N);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    bool analysed = false;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(N) * 7);

    NewtonResult out;
    double last_update = std::numeric_limits<double>::infinity();
    for (int iter = 0;; ++iter) {
        const auto b = boundary_terms(problem, Lam, data.t_new);
        trips.clear();
        std::vector<double> res(N);
        for (int colour = 0; colour < kColours; ++colour) {
            for (int j = 0; j < n; ++j) Hd[j] = Dual(H[j], j % kColours == colour ? 1.0 : 0.0);
            const auto r = residual_kernel<Dual>(Hd, Dual(Lam), data, b);
            if (colour == 0)
                for (int i = 0; i < N; ++i) res[i] = r[i].v;
            for (int i = 0; i < n; ++i)
                for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j)
                    if (j % kColours == colour) trips.emplace_back(i, j, r[i].d);
            if (colour == 0) trips.emplace_back(n, 0, r[n].d);
        }
        {
            for (int j = 0; j < n; ++j) Hd[j] = Dual(H[j]);
            const auto r = residual_kernel<Dual>(Hd, Dual(Lam, 1.0), data, b);
            for (int i = 0; i < N; ++i) trips.emplace_back(i, n, r[i].d);
        }

        const double norm = max_abs(res);
        if (!std::isfinite(norm)) raise(ErrorKind::NewtonDiverged, "non-finite residual");
        double scale = std::abs(Lam);
        for (double h : H) scale = std::max(scale, std::abs(h));
        if (iter > 0 && (norm <= cfg.newton_tol || last_update <= 1e-12 * std::max(1.0, scale))) {
            out.state = FilmState{grid, H, Lam, data.t_new};
            out.iterations = iter;
            out.residual_norm = norm;
            out.last_update = last_update;
            return out;
        }
        if (iter == cfg.newton_maxit)
            raise(ErrorKind::NewtonDiverged, "no convergence in " + std::to_string(iter) + " iterations");

        jac.setFromTriplets(trips.begin(), trips.end());
        if (!analysed) {
            lu.analyzePattern(jac);
            analysed = true;
        }
        lu.factorize(jac);
        if (lu.info() != Eigen::Success) raise(ErrorKind::NewtonDiverged, "singular Jacobian");
        const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(res.data(), N);
        const Eigen::VectorXd delta = lu.solve(rhs);
        if (!delta.allFinite()) raise(ErrorKind::NewtonDiverged, "non-finite Newton update");

        for (int j = 0; j < n; ++j) H[j] -= delta(j);
        Lam -= delta(n);
        last_update = delta.cwiseAbs().maxCoeff();
        if (!(Lam < grid.b)) raise(ErrorKind::MapDegenerate, "contact point reached the right end");
        if (*std::min_element(H.begin(), H.end()) <= rupture_floor)
            raise(ErrorKind::Rupture, "film height fell below the rupture floor");
    }
}

double contact_velocity(const FilmState& state, double dHdt_at_contact, const SolidProfile& profile, double k) {
    if (k == 0.0) raise(ErrorKind::ZeroContactAngle, "contact velocity is undefined for k = 0");
    const double gt = eval_g_derivs_onesided(profile, state.Lambda, state.t, Side::Right).gt;
    return (dHdt_at_contact - gt) / k;
}

double contact_height_rate(const FilmState& state, const FilmProblem& problem) {
    const auto closure = state_closure(state, problem);
    const double dxi = state.grid.dx();
    const auto ext = extend_with_ghosts(state.H, assemble_ghosts(state.H, dxi, closure));
    const auto F = face_fluxes(state.H, ext, dxi);
    const double s = state.stretch();
    const double s3 = s * s * s;
    const double h = dxi * state.jacobian();
    // Quadratic through the fluxes at offsets 0, h/2, 3h/2 from the contact point.
    const double qx = (-8.0 * closure.left_flux + 9.0 * s3 * F[0] - s3 * F[1]) / (3.0 * h);
    return -qx;
}

Integrator::Integrator(FilmState initial, FilmProblem problem, StepperConfig cfg)
    : current_(std::move(initial)), problem_(std::move(problem)), cfg_(cfg) {
    cfg_.validate();
    if (static_cast<int>(current_.H.size()) != current_.grid.n)
        raise(ErrorKind::InvalidArgument, "sample count differs from grid");
    if (!(current_.min_h() > 0.0)) raise(ErrorKind::DegenerateFilm, "initial film must be positive");
    dt_next_ = cfg_.dt;
    rupture_floor_ = cfg_.rupture_fraction * current_.min_h();
}

int Integrator::step(double t_stop) {
    const double remaining = t_stop - current_.t;
    if (!(remaining > 0.0)) return 0;
    double dt_try = dt_next_;
    for (;;) {
        const bool landing = dt_try >= remaining * (1.0 - 1e-6);
        const double dt = landing ? remaining : dt_try;
        const bool bdf2 = cfg_.scheme == Scheme::BDF2 && previous_.has_value();
        NewtonResult res;
        try {
            res = newton_solve(current_, dt, problem_, cfg_, rupture_floor_, bdf2 ? &*previous_ : nullptr);
        } catch (const Error& e) {
            const auto k = e.kind();
            const bool recoverable = k == ErrorKind::NewtonDiverged || k == ErrorKind::Rupture ||
                                     k == ErrorKind::MapDegenerate || k == ErrorKind::DegenerateFilm ||
                                     k == ErrorKind::ProfileViolation || k == ErrorKind::OutOfDomain;
            if (!recoverable || 0.5 * dt < cfg_.dt_min) throw;
            dt_try = 0.5 * dt;
            dt_next_ = dt_try;
            successes_ = 0;
            continue;
        }
        if (landing) res.state.t = t_stop;
        if (!(res.state.min_h() > rupture_floor_)) raise(ErrorKind::Rupture, "accepted film fell below the rupture floor");
        previous_ = std::move(current_);
        current_ = std::move(res.state);
        last_dt_ = dt;
        if (++successes_ >= cfg_.grow_after && dt_next_ < cfg_.dt_max) {
            dt_next_ = std::min(2.0 * dt_next_, cfg_.dt_max);
            successes_ = 0;
        }
        return res.iterations;
    }
}

Integrator::Checkpoint Integrator::checkpoint() const {
    return {current_, previous_, dt_next_, last_dt_, successes_, rupture_floor_};
}

Integrator Integrator::resume(const Checkpoint& cp, FilmProblem problem, StepperConfig cfg) {
    Integrator it(cp.current, std::move(problem), cfg);
    it.previous_ = cp.previous;
    it.dt_next_ = cp.dt_next;
    it.last_dt_ = cp.last_dt;
    it.successes_ = cp.successes;
    it.rupture_floor_ = cp.rupture_floor;
    return it;
}

RunSummary run(Integrator& integrator, double t_end, const DiagnosticsSink& sink) {
    const auto& p = integrator.problem();
    RunSummary summary;
    if (sink) sink(make_record(integrator.state(), p.profile, p.energies, 0, 0.0), integrator.state());
    while (integrator.state().t < t_end) {
        const int iters = integrator.step(t_end);
        ++summary.steps;
        summary.newton_iterations += iters;
        if (sink)
            sink(make_record(integrator.state(), p.profile, p.energies, iters, integrator.last_dt()),
                 integrator.state());
    }
    summary.final_state = integrator.state();
    return summary;
}

RunSummary run(const FilmState& initial, const FilmProblem& problem, const StepperConfig& cfg, double t_end,
               const DiagnosticsSink& sink) {
    Integrator integrator(initial, problem, cfg);
    return run(integrator, t_end, sink);
}

}  // namespace meniscus
