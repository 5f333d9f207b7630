#include "meniscus/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "meniscus/errors.hpp"

namespace meniscus {

namespace {

double trapezoid(const std::vector<double>& f, double dx) {
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * dx;
}

}  // namespace

std::vector<double> node_slopes(const std::vector<double>& H, double dx) {
    const std::size_t n = H.size();
    std::vector<double> d(n);
    d[0] = (-3.0 * H[0] + 4.0 * H[1] - H[2]) / (2.0 * dx);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (H[i + 1] - H[i - 1]) / (2.0 * dx);
    d[n - 1] = (3.0 * H[n - 1] - 4.0 * H[n - 2] + H[n - 3]) / (2.0 * dx);
    return d;
}

std::vector<double> node_third_derivatives(const std::vector<double>& H, double dx) {
    const std::size_t n = H.size();
    if (n < 7) raise(ErrorKind::GridTooSmall, "third derivative needs at least 7 nodes");
    const double inv = 1.0 / (dx * dx * dx);
    std::vector<double> d(n);
    d[0] = (-2.5 * H[0] + 9.0 * H[1] - 12.0 * H[2] + 7.0 * H[3] - 1.5 * H[4]) * inv;
    d[1] = (-1.5 * H[0] + 5.0 * H[1] - 6.0 * H[2] + 3.0 * H[3] - 0.5 * H[4]) * inv;
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = 0.5 * (H[i + 2] - 2.0 * H[i + 1] + 2.0 * H[i - 1] - H[i - 2]) * inv;
    const std::size_t m = n - 1;
    d[m] = (2.5 * H[m] - 9.0 * H[m - 1] + 12.0 * H[m - 2] - 7.0 * H[m - 3] + 1.5 * H[m - 4]) * inv;
    d[m - 1] = (1.5 * H[m] - 5.0 * H[m - 1] + 6.0 * H[m - 2] - 3.0 * H[m - 3] + 0.5 * H[m - 4]) * inv;
    return d;
}

double total_mass(const FilmState& state, const SolidProfile& profile, int solid_intervals) {
    const double solid = state.Lambda > 0.0
                             ? trapezoid_solid_volume(profile, state.Lambda, state.t, solid_intervals).first
                             : 0.0;
    return solid + state.jacobian() * trapezoid(state.H, state.grid.dx());
}

double total_energy(const FilmState& state, const SolidProfile& profile, const InterfaceEnergies& energies,
                    int solid_intervals) {
    double e = 0.0;
    if (energies.a != 0.0 && state.Lambda > 0.0)
        e += energies.a * trapezoid_slope_squared(profile, 0.0, state.Lambda, state.t, solid_intervals);
    if (energies.c != 0.0)
        e += energies.c * trapezoid_slope_squared(profile, state.Lambda, state.grid.b, state.t, solid_intervals);
    auto slope = node_slopes(state.H, state.grid.dx());
    for (auto& v : slope) v *= v;
    e += energies.b * state.stretch() * trapezoid(slope, state.grid.dx());
    return e;
}

double dissipation_rate(const FilmState& state, double b) {
    if (!(state.min_h() > 0.0)) raise(ErrorKind::DegenerateFilm, "dissipation needs a positive film");
    auto d3 = node_third_derivatives(state.H, state.grid.dx());
    for (std::size_t i = 0; i < d3.size(); ++i) d3[i] = state.H[i] * state.H[i] * state.H[i] * d3[i] * d3[i];
    const double s = state.stretch();
    return 2.0 * b * s * s * s * s * s * trapezoid(d3, state.grid.dx());
}

DiagnosticsRecord make_record(const FilmState& state, const SolidProfile& profile, const InterfaceEnergies& energies,
                              int newton_iters, double dt) {
    DiagnosticsRecord r;
    r.t = state.t;
    r.mass = total_mass(state, profile);
    r.energy = total_energy(state, profile, energies);
    r.dissipation = dissipation_rate(state, energies.b);
    r.Lambda = state.Lambda;
    r.min_h = state.min_h();
    r.newton_iters = newton_iters;
    r.dt = dt;
    return r;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, Interval window) {
    std::vector<double> ts, ys;
    for (const auto& [t, v] : series) {
        if (!(v > 0.0)) raise(ErrorKind::NonPositiveSeries, "decay fit needs positive values");
        if (!window.contains(t)) continue;
        ts.push_back(t);
        ys.push_back(std::log(v));
    }
    if (ts.size() < 10) raise(ErrorKind::InvalidArgument, "decay fit needs at least 10 samples in the window");
    const double m = static_cast<double>(ts.size());
    double tm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        tm += ts[i];
        ym += ys[i];
    }
    tm /= m;
    ym /= m;
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        stt += (ts[i] - tm) * (ts[i] - tm);
        sty += (ts[i] - tm) * (ys[i] - ym);
        syy += (ys[i] - ym) * (ys[i] - ym);
    }
    DecayFit fit;
    const double slope = stt > 0.0 ? sty / stt : 0.0;
    fit.omega = -slope;
    fit.prefactor = std::exp(ym - slope * tm);
    double sse = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double r = ys[i] - (ym + slope * (ts[i] - tm));
        sse += r * r;
    }
    // A constant series is fitted exactly; the rounded mean would otherwise leave syy ~ sse ~ ulp^2.
    const bool constant = std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); });
    fit.r_squared = constant || syy == 0.0 ? 1.0 : std::clamp(1.0 - sse / syy, 0.0, 1.0);
    fit.window = {ts.front(), ts.back()};
    return fit;
}

PoincareResult discrete_poincare(const Grid& grid, double bc_ratio, const PoincareOptions& options) {
    const int n = grid.n;
    if (n < 50) raise(ErrorKind::GridTooSmall, "discrete Poincare constant needs n >= 50");
    const double dx = grid.dx();

    // int |phi_x|^2 from forward differences on the n - 1 cells.
    Eigen::MatrixXd D1 = Eigen::MatrixXd::Zero(n - 1, n);
    for (int i = 0; i < n - 1; ++i) {
        D1(i, i) = -1.0 / dx;
        D1(i, i + 1) = 1.0 / dx;
    }
    // int |phi_xxx|^2 from third differences centred on the faces i + 1/2, i = 1 .. n-3.
    Eigen::MatrixXd D3 = Eigen::MatrixXd::Zero(n - 3, n);
    const double inv3 = 1.0 / (dx * dx * dx);
    for (int r = 0; r < n - 3; ++r) {
        const int i = r + 1;
        D3(r, i - 1) = -inv3;
        D3(r, i) = 3.0 * inv3;
        D3(r, i + 1) = -3.0 * inv3;
        D3(r, i + 2) = inv3;
    }
    const Eigen::MatrixXd A = dx * D3.transpose() * D3;
    const Eigen::MatrixXd B = dx * D1.transpose() * D1;

    const int m = options.zero_mean ? 3 : 2;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, n);
    C(0, 0) = -1.5 / dx - bc_ratio;
    C(0, 1) = 2.0 / dx;
    C(0, 2) = -0.5 / dx;
    C(1, n - 1) = 1.5 / dx;
    C(1, n - 2) = -2.0 / dx;
    C(1, n - 3) = 0.5 / dx;
    if (options.zero_mean) {
        const auto w = grid.trapezoid_weights();
        for (int i = 0; i < n; ++i) C(2, i) = w[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(m - 1) > 1e-12 * sv(0)))
        raise(ErrorKind::SingularConstraint, "boundary and mean constraints are linearly dependent on this grid");
    const Eigen::MatrixXd Z = svd.matrixV().rightCols(n - m);

    const Eigen::MatrixXd Ar = Z.transpose() * A * Z;
    const Eigen::MatrixXd Br = Z.transpose() * B * Z;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Ar, Br, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) raise(ErrorKind::SingularConstraint, "constrained eigenproblem failed");

    PoincareResult res;
    res.n = n;
    const auto& ev = es.eigenvalues();
    res.mu = ev(0);
    res.constant_C = res.mu != 0.0 ? 1.0 / res.mu : std::numeric_limits<double>::infinity();
    for (int j = 0; j < std::min<int>(options.n_modes, static_cast<int>(ev.size())); ++j) res.spectrum.push_back(ev(j));

    if (options.zero_mean) {
        const Eigen::VectorXd e = Z.row(0).transpose();
        Eigen::LDLT<Eigen::MatrixXd> ldlt(Ar);
        res.trace_constant = e.dot(ldlt.solve(e));
    }
    return res;
}

FilmState sampled_steady_state(const SolidProfile& profile, double k, const Grid& grid, double Lambda, double t) {
    const auto sol = steady_profile(profile, k, Lambda, grid.b, t);
    FilmState s{grid, std::vector<double>(grid.n), Lambda, t};
    for (int i = 0; i < grid.n; ++i) s.H[i] = sol.height(s.physical_x(i));
    return s;
}

FilmState discrete_steady_state(const SolidProfile& profile, double k, const Grid& grid, double target_mass,
                                double guess, double t) {
    auto mismatch = [&](double Lambda) {
        return total_mass(sampled_steady_state(profile, k, grid, Lambda, t), profile) - target_mass;
    };
    double x0 = guess;
    double x1 = guess + 1e-4 * (grid.b - grid.a);
    double f0 = mismatch(x0);
    double f1 = mismatch(x1);
    for (int it = 0; it < 60 && f1 != 0.0 && f1 != f0; ++it) {
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = mismatch(x1);
        if (std::abs(x1 - x0) <= 1e-15 * std::max(1.0, std::abs(x1))) break;
    }
    if (!(std::abs(f1) <= 1e-12 * std::abs(target_mass)))
        raise(ErrorKind::VolumeUnattainable, "no discrete steady state with the requested mass near the guess");
    return sampled_steady_state(profile, k, grid, x1, t);
}

}  // namespace meniscus
