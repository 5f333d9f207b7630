#include "meniscus/cli_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "meniscus/errors.hpp"

namespace meniscus {

using json = nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!j.is_object()) raise(ErrorKind::ParseError, where + " must be an object");
    for (const auto& item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            raise(ErrorKind::ParseError, "unknown key \"" + item.key() + "\" in " + where);
    }
}

double get_number(const json& j, const std::string& key, const std::string& where) {
    const auto& v = j.at(key);
    if (!v.is_number()) raise(ErrorKind::ParseError, where + "." + key + " must be a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& where) {
    const auto& v = j.at(key);
    if (!v.is_number_integer()) raise(ErrorKind::ParseError, where + "." + key + " must be an integer");
    return v.get<int>();
}

std::string get_string(const json& j, const std::string& key, const std::string& where) {
    const auto& v = j.at(key);
    if (!v.is_string()) raise(ErrorKind::ParseError, where + "." + key + " must be a string");
    return v.get<std::string>();
}

bool get_bool(const json& j, const std::string& key, const std::string& where) {
    const auto& v = j.at(key);
    if (!v.is_boolean()) raise(ErrorKind::ParseError, where + "." + key + " must be true or false");
    return v.get<bool>();
}

/// A number or an array of numbers.
std::vector<double> get_coeffs(const json& j, const std::string& key, const std::string& where) {
    const auto& v = j.at(key);
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array() || v.empty()) raise(ErrorKind::ParseError, where + "." + key + " must be a number or a non-empty array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) raise(ErrorKind::ParseError, where + "." + key + " must contain numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}

template <class F>
void optional_field(const json& j, const char* key, F&& f) {
    if (j.contains(key)) f();
}

ProfileConfig parse_profile(const json& j) {
    const std::string where = "profile";
    if (!j.is_object() || !j.contains("kind")) raise(ErrorKind::ParseError, "profile needs a \"kind\"");
    ProfileConfig p;
    p.kind = get_string(j, "kind", where);
    if (p.kind == "constant_descent") {
        check_keys(j, {"kind", "H0", "t0", "n"}, where);
        optional_field(j, "H0", [&] { p.H0 = get_number(j, "H0", where); });
        optional_field(j, "t0", [&] { p.t0 = get_number(j, "t0", where); });
        optional_field(j, "n", [&] { p.n = get_number(j, "n", where); });
    } else if (p.kind == "wedge") {
        check_keys(j, {"kind", "htilde", "c"}, where);
        optional_field(j, "htilde", [&] { p.htilde = get_coeffs(j, "htilde", where); });
        optional_field(j, "c", [&] { p.c = get_number(j, "c", where); });
    } else if (p.kind == "polynomial") {
        check_keys(j, {"kind", "coeffs", "descent"}, where);
        optional_field(j, "coeffs", [&] { p.coeffs = get_coeffs(j, "coeffs", where); });
        optional_field(j, "descent", [&] { p.descent = get_coeffs(j, "descent", where); });
    } else if (p.kind == "stationary") {
        check_keys(j, {"kind", "coeffs"}, where);
        optional_field(j, "coeffs", [&] { p.coeffs = get_coeffs(j, "coeffs", where); });
    } else {
        raise(ErrorKind::ParseError, "unknown profile kind \"" + p.kind + "\"");
    }
    return p;
}

json profile_to_json(const ProfileConfig& p) {
    json j;
    j["kind"] = p.kind;
    if (p.kind == "constant_descent") {
        j["H0"] = p.H0;
        j["t0"] = p.t0;
        j["n"] = p.n;
    } else if (p.kind == "wedge") {
        j["htilde"] = p.htilde;
        j["c"] = p.c;
    } else if (p.kind == "polynomial") {
        j["coeffs"] = p.coeffs;
        j["descent"] = p.descent;
    } else {
        j["coeffs"] = p.coeffs;
    }
    return j;
}

StepperConfig parse_stepper(const json& j) {
    const std::string where = "stepper";
    check_keys(j, {"dt", "scheme", "newton_tol", "newton_maxit", "dt_min", "dt_max", "grow_after", "rupture_fraction"},
               where);
    StepperConfig s;
    optional_field(j, "dt", [&] { s.dt = get_number(j, "dt", where); });
    optional_field(j, "scheme", [&] {
        const auto v = get_string(j, "scheme", where);
        if (v == "BDF1")
            s.scheme = Scheme::BDF1;
        else if (v == "BDF2")
            s.scheme = Scheme::BDF2;
        else
            raise(ErrorKind::ParseError, "stepper.scheme must be \"BDF1\" or \"BDF2\"");
    });
    optional_field(j, "newton_tol", [&] { s.newton_tol = get_number(j, "newton_tol", where); });
    optional_field(j, "newton_maxit", [&] { s.newton_maxit = get_int(j, "newton_maxit", where); });
    optional_field(j, "dt_min", [&] { s.dt_min = get_number(j, "dt_min", where); });
    optional_field(j, "dt_max", [&] { s.dt_max = get_number(j, "dt_max", where); });
    optional_field(j, "grow_after", [&] { s.grow_after = get_int(j, "grow_after", where); });
    optional_field(j, "rupture_fraction", [&] { s.rupture_fraction = get_number(j, "rupture_fraction", where); });
    try {
        s.validate();
    } catch (const Error& e) {
        raise(ErrorKind::ParseError, std::string("stepper: ") + e.what());
    }
    return s;
}

json stepper_to_json(const StepperConfig& s) {
    return json{{"dt", s.dt},
                {"scheme", s.scheme == Scheme::BDF1 ? "BDF1" : "BDF2"},
                {"newton_tol", s.newton_tol},
                {"newton_maxit", s.newton_maxit},
                {"dt_min", s.dt_min},
                {"dt_max", s.dt_max},
                {"grow_after", s.grow_after},
                {"rupture_fraction", s.rupture_fraction}};
}

bool same_stepper(const StepperConfig& a, const StepperConfig& b) {
    return a.dt == b.dt && a.scheme == b.scheme && a.newton_tol == b.newton_tol && a.newton_maxit == b.newton_maxit &&
           a.dt_min == b.dt_min && a.dt_max == b.dt_max && a.grow_after == b.grow_after &&
           a.rupture_fraction == b.rupture_fraction;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::IoError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorKind::IoError, "cannot write " + path);
    return out;
}

json state_to_json(const FilmState& s) {
    return json{{"grid", {{"n", s.grid.n}, {"a", s.grid.a}, {"b", s.grid.b}}},
                {"H", s.H},
                {"Lambda", s.Lambda},
                {"t", s.t}};
}

FilmState state_from_json(const json& j, const std::string& where) {
    check_keys(j, {"grid", "H", "Lambda", "t", "history"}, where);
    const auto& g = j.at("grid");
    check_keys(g, {"n", "a", "b"}, where + ".grid");
    FilmState s;
    s.grid = Grid(get_int(g, "n", where + ".grid"), get_number(g, "a", where + ".grid"), get_number(g, "b", where + ".grid"));
    s.H = j.at("H").get<std::vector<double>>();
    if (static_cast<int>(s.H.size()) != s.grid.n) raise(ErrorKind::ParseError, where + ".H length differs from grid.n");
    s.Lambda = get_number(j, "Lambda", where);
    s.t = get_number(j, "t", where);
    return s;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
    return mode == o.mode && profile == o.profile && k == o.k && energies.a == o.energies.a &&
           energies.b == o.energies.b && energies.c == o.energies.c && L == o.L && X_max == o.X_max &&
           grid_n == o.grid_n && same_stepper(stepper, o.stepper) && t_end == o.t_end && initial == o.initial &&
           seed == o.seed && Lambda_bar == o.Lambda_bar && V0 == o.V0 && Lambda0 == o.Lambda0 && output == o.output &&
           stability == o.stability && poincare == o.poincare && convergence == o.convergence;
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        raise(ErrorKind::ParseError, e.what());
    }
    const std::string where = "config";
    check_keys(j,
               {"mode", "profile", "k", "energies", "L", "X_max", "grid_n", "stepper", "t_end", "initial", "seed",
                "Lambda_bar", "V0", "Lambda0", "output", "stability", "poincare", "convergence"},
               where);
    RunConfig c;
    try {
        optional_field(j, "mode", [&] {
            const auto m = get_string(j, "mode", where);
            if (m == "periodic")
                c.mode = Mode::Periodic;
            else if (m == "halfline")
                c.mode = Mode::Halfline;
            else
                raise(ErrorKind::ParseError, "mode must be \"periodic\" or \"halfline\"");
        });
        if (j.contains("profile")) c.profile = parse_profile(j.at("profile"));
        optional_field(j, "k", [&] {
            const auto& v = j.at("k");
            if (v.is_string() && v.get<std::string>() == "young")
                c.k.reset();
            else if (v.is_number())
                c.k = v.get<double>();
            else
                raise(ErrorKind::ParseError, "k must be a number or \"young\"");
        });
        if (!j.contains("k")) c.k = 0.0;
        optional_field(j, "energies", [&] {
            const auto& e = j.at("energies");
            check_keys(e, {"a", "b", "c"}, "energies");
            optional_field(e, "a", [&] { c.energies.a = get_number(e, "a", "energies"); });
            optional_field(e, "b", [&] { c.energies.b = get_number(e, "b", "energies"); });
            optional_field(e, "c", [&] { c.energies.c = get_number(e, "c", "energies"); });
        });
        optional_field(j, "L", [&] { c.L = get_number(j, "L", where); });
        optional_field(j, "X_max", [&] { c.X_max = get_number(j, "X_max", where); });
        optional_field(j, "grid_n", [&] { c.grid_n = get_int(j, "grid_n", where); });
        if (j.contains("stepper")) c.stepper = parse_stepper(j.at("stepper"));
        optional_field(j, "t_end", [&] { c.t_end = get_number(j, "t_end", where); });
        optional_field(j, "initial", [&] {
            const auto& e = j.at("initial");
            check_keys(e, {"kind", "eps", "mode_shape", "path"}, "initial");
            optional_field(e, "kind", [&] { c.initial.kind = get_string(e, "kind", "initial"); });
            optional_field(e, "eps", [&] { c.initial.eps = get_number(e, "eps", "initial"); });
            optional_field(e, "mode_shape", [&] {
                const auto& m = e.at("mode_shape");
                if (m.is_number_integer())
                    c.initial.mode_shape = std::to_string(m.get<int>());
                else if (m.is_string())
                    c.initial.mode_shape = m.get<std::string>();
                else
                    raise(ErrorKind::ParseError, "initial.mode_shape must be an integer or \"random\"");
            });
            optional_field(e, "path", [&] { c.initial.path = get_string(e, "path", "initial"); });
        });
        optional_field(j, "seed", [&] {
            if (!j.at("seed").is_number_unsigned()) raise(ErrorKind::ParseError, "seed must be a non-negative integer");
            c.seed = j.at("seed").get<std::uint64_t>();
        });
        optional_field(j, "Lambda_bar", [&] { c.Lambda_bar = get_number(j, "Lambda_bar", where); });
        optional_field(j, "V0", [&] { c.V0 = get_number(j, "V0", where); });
        optional_field(j, "Lambda0", [&] { c.Lambda0 = get_number(j, "Lambda0", where); });
        optional_field(j, "output", [&] {
            const auto& e = j.at("output");
            check_keys(e, {"dir", "snapshot_stride", "plots"}, "output");
            optional_field(e, "dir", [&] { c.output.dir = get_string(e, "dir", "output"); });
            optional_field(e, "snapshot_stride", [&] { c.output.snapshot_stride = get_int(e, "snapshot_stride", "output"); });
            optional_field(e, "plots", [&] { c.output.plots = get_bool(e, "plots", "output"); });
        });
        optional_field(j, "stability", [&] {
            const auto& e = j.at("stability");
            check_keys(e, {"fit_start", "refine"}, "stability");
            optional_field(e, "fit_start", [&] { c.stability.fit_start = get_number(e, "fit_start", "stability"); });
            optional_field(e, "refine", [&] { c.stability.refine = get_bool(e, "refine", "stability"); });
        });
        optional_field(j, "poincare", [&] {
            const auto& e = j.at("poincare");
            check_keys(e, {"n", "bc_ratio", "a", "b", "n_modes"}, "poincare");
            optional_field(e, "n", [&] { c.poincare.n = get_int(e, "n", "poincare"); });
            optional_field(e, "bc_ratio", [&] { c.poincare.bc_ratio = get_number(e, "bc_ratio", "poincare"); });
            optional_field(e, "a", [&] { c.poincare.a = get_number(e, "a", "poincare"); });
            optional_field(e, "b", [&] { c.poincare.b = get_number(e, "b", "poincare"); });
            optional_field(e, "n_modes", [&] { c.poincare.n_modes = get_int(e, "n_modes", "poincare"); });
        });
        optional_field(j, "convergence", [&] {
            const auto& e = j.at("convergence");
            check_keys(e, {"grids", "velocity", "amplitude"}, "convergence");
            optional_field(e, "grids", [&] { c.convergence.grids = e.at("grids").get<std::vector<int>>(); });
            optional_field(e, "velocity", [&] { c.convergence.velocity = get_number(e, "velocity", "convergence"); });
            optional_field(e, "amplitude", [&] { c.convergence.amplitude = get_number(e, "amplitude", "convergence"); });
        });
    } catch (const json::exception& e) {
        raise(ErrorKind::ParseError, e.what());
    }

    if (c.grid_n < 7) raise(ErrorKind::ParseError, "grid_n must be at least 7");
    if (!(c.t_end > 0.0)) raise(ErrorKind::ParseError, "t_end must be positive");
    if (!(c.energies.b > 0.0)) raise(ErrorKind::ParseError, "energies.b must be positive");
    const auto& kind = c.initial.kind;
    if (kind != "steady" && kind != "perturbed" && kind != "explicit" && kind != "meniscus")
        raise(ErrorKind::ParseError, "initial.kind must be steady, perturbed, explicit or meniscus");
    if (!(c.initial.eps >= 0.0 && c.initial.eps < 0.1))
        raise(ErrorKind::ParseError, "initial.eps must lie in [0, 0.1)");
    if (kind == "explicit" && c.initial.path.empty()) raise(ErrorKind::ParseError, "initial.path is required for explicit");
    if (c.initial.mode_shape != "random") {
        int m = 0;
        const auto& ms = c.initial.mode_shape;
        const auto res = std::from_chars(ms.data(), ms.data() + ms.size(), m);
        if (res.ec != std::errc() || res.ptr != ms.data() + ms.size() || m < 1)
            raise(ErrorKind::ParseError, "initial.mode_shape must be a positive integer or \"random\"");
    }
    if (c.mode == Mode::Periodic) {
        if (c.Lambda_bar.has_value() == c.V0.has_value())
            raise(ErrorKind::ParseError, "periodic mode needs exactly one of Lambda_bar and V0");
        if (kind == "meniscus") raise(ErrorKind::ParseError, "the meniscus initial state is for halfline mode");
    } else {
        if (!(c.X_max > 0.0)) raise(ErrorKind::ParseError, "X_max must be positive");
        if (kind == "steady" || kind == "perturbed")
            raise(ErrorKind::ParseError, "halfline mode starts from a meniscus or explicit state");
    }
    if (c.output.snapshot_stride < 0) raise(ErrorKind::ParseError, "output.snapshot_stride must be >= 0");
    if (!(c.stability.fit_start >= 0.0 && c.stability.fit_start < 1.0))
        raise(ErrorKind::ParseError, "stability.fit_start must lie in [0, 1)");
    return c;
}

std::string serialize_config(const RunConfig& c) {
    json j;
    j["mode"] = c.mode == Mode::Periodic ? "periodic" : "halfline";
    j["profile"] = profile_to_json(c.profile);
    if (c.k)
        j["k"] = *c.k;
    else
        j["k"] = "young";
    j["energies"] = {{"a", c.energies.a}, {"b", c.energies.b}, {"c", c.energies.c}};
    j["L"] = c.L;
    j["X_max"] = c.X_max;
    j["grid_n"] = c.grid_n;
    j["stepper"] = stepper_to_json(c.stepper);
    j["t_end"] = c.t_end;
    json init = {{"kind", c.initial.kind}, {"eps", c.initial.eps}, {"mode_shape", c.initial.mode_shape}};
    if (!c.initial.path.empty()) init["path"] = c.initial.path;
    j["initial"] = init;
    j["seed"] = c.seed;
    if (c.Lambda_bar) j["Lambda_bar"] = *c.Lambda_bar;
    if (c.V0) j["V0"] = *c.V0;
    j["Lambda0"] = c.Lambda0;
    j["output"] = {{"dir", c.output.dir}, {"snapshot_stride", c.output.snapshot_stride}, {"plots", c.output.plots}};
    j["stability"] = {{"fit_start", c.stability.fit_start}, {"refine", c.stability.refine}};
    j["poincare"] = {{"n", c.poincare.n},
                     {"bc_ratio", c.poincare.bc_ratio},
                     {"a", c.poincare.a},
                     {"b", c.poincare.b},
                     {"n_modes", c.poincare.n_modes}};
    j["convergence"] = {{"grids", c.convergence.grids},
                        {"velocity", c.convergence.velocity},
                        {"amplitude", c.convergence.amplitude}};
    return j.dump(2) + "\n";
}

RunConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

SolidProfile build_profile(const ProfileConfig& p) {
    if (p.kind == "constant_descent") return SolidProfile::constant_descent(p.H0, p.t0, p.n);
    if (p.kind == "wedge") return SolidProfile::wedge(TimePolynomial{p.htilde}, p.c);
    if (p.kind == "polynomial") return SolidProfile::polynomial(p.coeffs, TimePolynomial{p.descent});
    if (p.kind == "stationary") return SolidProfile::stationary_polynomial(p.coeffs);
    raise(ErrorKind::ParseError, "unknown profile kind \"" + p.kind + "\"");
}

double resolve_contact_angle(const RunConfig& cfg, const SolidProfile& profile, double Lambda) {
    if (cfg.k) return *cfg.k;
    return young_angle(cfg.energies, eval_g_derivs_onesided(profile, Lambda, 0.0, Side::Right).gx);
}

double reference_contact_point(const RunConfig& cfg, const SolidProfile& profile) {
    if (cfg.mode == Mode::Halfline) return cfg.Lambda0;
    if (cfg.Lambda_bar) return *cfg.Lambda_bar;
    // Volume given: with k from Young's relation the angle depends on the root, so iterate.
    double Lambda = 0.5 * cfg.L;
    for (int it = 0; it < 50; ++it) {
        const double k = resolve_contact_angle(cfg, profile, Lambda);
        const double next = solve_equilibrium_position(*cfg.V0, profile, k, cfg.L);
        if (next == Lambda) break;
        Lambda = next;
        if (cfg.k) break;
    }
    return Lambda;
}

FilmProblem build_problem(const RunConfig& cfg) {
    FilmProblem p;
    p.profile = build_profile(cfg.profile);
    p.energies = cfg.energies;
    p.mode = cfg.mode;
    p.k = resolve_contact_angle(cfg, p.profile, reference_contact_point(cfg, p.profile));
    return p;
}

Grid build_grid(const RunConfig& cfg, const FilmProblem& problem) {
    const double a = reference_contact_point(cfg, problem.profile);
    const double b = cfg.mode == Mode::Periodic ? cfg.L : a + cfg.X_max;
    return Grid(cfg.grid_n, a, b);
}

std::vector<double> perturbation_mode(const Grid& grid, int m, double eps) {
    std::vector<double> phi(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double y = (grid.node(i) - grid.a) / (grid.b - grid.a);
        phi[i] = eps * (std::cos(m * kPi * y) - std::cos((m + 1) * kPi * y));
    }
    return phi;
}

std::vector<double> random_perturbation(const Grid& grid, double eps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::array<double, 4> w{};
    double wmax = 0.0;
    for (auto& v : w) {
        // Map the raw 64-bit draw to [-1, 1] by hand so the result does not depend on the library.
        v = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        wmax = std::max(wmax, std::abs(v));
    }
    std::vector<double> phi(grid.n, 0.0);
    for (int m = 1; m <= 4; ++m) {
        const auto mode = perturbation_mode(grid, m, w[m - 1]);
        for (int i = 0; i < grid.n; ++i) phi[i] += mode[i];
    }
    double amp = 0.0;
    for (double v : phi) amp = std::max(amp, std::abs(v));
    if (amp > 0.0)
        for (double& v : phi) v *= eps / amp;
    return phi;
}

FilmState build_initial_state(const RunConfig& cfg, const FilmProblem& problem) {
    const Grid grid = build_grid(cfg, problem);
    const auto& kind = cfg.initial.kind;
    if (kind == "explicit") {
        auto cp = read_snapshot(cfg.initial.path);
        if (cp.current.grid.n != grid.n)
            raise(ErrorKind::InvalidArgument, "explicit initial state has a different node count");
        return cp.current;
    }
    if (kind == "meniscus") {
        const double g = eval_g(problem.profile, grid.a, 0.0);
        const double gx = eval_g_derivs_onesided(problem.profile, grid.a, 0.0, Side::Right).gx;
        FilmState s{grid, std::vector<double>(grid.n, problem.far_field), grid.a, 0.0};
        const double rise = g - problem.far_field;
        if (rise != 0.0) {
            const double length = rise / (problem.k - gx);
            if (!(length > 0.0))
                raise(ErrorKind::InvalidArgument, "meniscus needs (g - 1) / (k - g_x) > 0 at the contact point");
            for (int i = 0; i < grid.n; ++i)
                s.H[i] = problem.far_field + rise * std::exp(-(grid.node(i) - grid.a) / length);
        }
        return s;
    }
    auto s = sampled_steady_state(problem.profile, problem.k, grid, grid.a);
    if (kind == "perturbed") {
        const auto phi = cfg.initial.mode_shape == "random"
                             ? random_perturbation(grid, cfg.initial.eps, cfg.seed)
                             : perturbation_mode(grid, std::stoi(cfg.initial.mode_shape), cfg.initial.eps);
        for (int i = 0; i < grid.n; ++i) s.H[i] += phi[i];
        if (!(s.min_h() > 0.0)) raise(ErrorKind::DegenerateFilm, "perturbed initial film is not positive");
    }
    return s;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

DiagnosticsWriter::DiagnosticsWriter(const std::string& path) : path_(path) {
    auto out = open_out(path_);
    out << "t,mass,energy,dissipation,lambda,min_h,newton_iters,dt\n";
}

void DiagnosticsWriter::write(const DiagnosticsRecord& r) {
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) raise(ErrorKind::IoError, "cannot append to " + path_);
    out << format_double(r.t) << ',' << format_double(r.mass) << ',' << format_double(r.energy) << ','
        << format_double(r.dissipation) << ',' << format_double(r.Lambda) << ',' << format_double(r.min_h) << ','
        << r.newton_iters << ',' << format_double(r.dt) << '\n';
}

void write_diag(const std::vector<DiagnosticsRecord>& records, const std::string& path) {
    auto out = open_out(path);
    out << "t,mass,energy,dissipation,lambda,min_h,newton_iters,dt\n";
    for (const auto& r : records)
        out << format_double(r.t) << ',' << format_double(r.mass) << ',' << format_double(r.energy) << ','
            << format_double(r.dissipation) << ',' << format_double(r.Lambda) << ',' << format_double(r.min_h) << ','
            << r.newton_iters << ',' << format_double(r.dt) << '\n';
}

std::vector<DiagnosticsRecord> read_diag(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::getline(in, line);
    if (line != "t,mass,energy,dissipation,lambda,min_h,newton_iters,dt")
        raise(ErrorKind::ParseError, "unexpected diagnostics header in " + path);
    std::vector<DiagnosticsRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<std::string, 8> f;
        std::istringstream ls(line);
        for (auto& s : f)
            if (!std::getline(ls, s, ',')) raise(ErrorKind::ParseError, "short diagnostics row in " + path);
        auto num = [&](const std::string& s) {
            double v = 0.0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc()) raise(ErrorKind::ParseError, "bad number \"" + s + "\" in " + path);
            return v;
        };
        DiagnosticsRecord r;
        r.t = num(f[0]);
        r.mass = num(f[1]);
        r.energy = num(f[2]);
        r.dissipation = num(f[3]);
        r.Lambda = num(f[4]);
        r.min_h = num(f[5]);
        r.newton_iters = static_cast<int>(num(f[6]));
        r.dt = num(f[7]);
        out.push_back(r);
    }
    return out;
}

void write_snapshot(const Integrator::Checkpoint& cp, const std::string& path) {
    json j = state_to_json(cp.current);
    j["history"] = {{"previous", cp.previous ? state_to_json(*cp.previous) : json(nullptr)},
                    {"dt_next", cp.dt_next},
                    {"last_dt", cp.last_dt},
                    {"successes", cp.successes},
                    {"rupture_floor", cp.rupture_floor}};
    auto out = open_out(path);
    out << j.dump(1) << '\n';
}

void write_snapshot(const FilmState& state, const std::string& path) {
    auto out = open_out(path);
    out << state_to_json(state).dump(1) << '\n';
}

Integrator::Checkpoint read_snapshot(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        raise(ErrorKind::ParseError, e.what());
    }
    Integrator::Checkpoint cp;
    try {
        cp.current = state_from_json(j, "snapshot");
        if (j.contains("history")) {
            const auto& h = j.at("history");
            check_keys(h, {"previous", "dt_next", "last_dt", "successes", "rupture_floor"}, "snapshot.history");
            if (!h.at("previous").is_null()) cp.previous = state_from_json(h.at("previous"), "snapshot.history.previous");
            cp.dt_next = get_number(h, "dt_next", "snapshot.history");
            cp.last_dt = get_number(h, "last_dt", "snapshot.history");
            cp.successes = get_int(h, "successes", "snapshot.history");
            cp.rupture_floor = get_number(h, "rupture_floor", "snapshot.history");
        }
    } catch (const json::exception& e) {
        raise(ErrorKind::ParseError, e.what());
    }
    return cp;
}

namespace {

constexpr double kWidth = 640.0, kHeight = 400.0, kMargin = 56.0;
constexpr std::array<const char*, 6> kColours{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string fixed(double v, int digits = 2) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
    return std::string(buf.data(), res.ptr);
}

std::string compact(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 4);
    return std::string(buf.data(), res.ptr);
}

struct Frame {
    double xmin, xmax, ymin, ymax;
    double px(double x) const { return kMargin + (x - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin); }
    double py(double y) const { return kHeight - kMargin - (y - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin); }
};

Frame frame_for(double xmin, double xmax, double ymin, double ymax) {
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    return {xmin, xmax, ymin - pad, ymax + pad};
}

void svg_axes(std::ostream& out, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth, 0) << "\" height=\"" << fixed(kHeight, 0)
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << fixed(kMargin) << "\" y=\"" << fixed(kMargin) << "\" width=\"" << fixed(kWidth - 2 * kMargin)
        << "\" height=\"" << fixed(kHeight - 2 * kMargin) << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fixed(kWidth / 2) << "\" y=\"" << fixed(kHeight - 12) << "\" text-anchor=\"middle\">" << xlabel
        << "</text>\n";
    out << "<text x=\"14\" y=\"" << fixed(kHeight / 2) << "\" transform=\"rotate(-90 14 " << fixed(kHeight / 2)
        << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
    out << "<text x=\"" << fixed(kMargin) << "\" y=\"" << fixed(kHeight - kMargin + 16) << "\" text-anchor=\"middle\">"
        << compact(f.xmin) << "</text>\n";
    out << "<text x=\"" << fixed(kWidth - kMargin) << "\" y=\"" << fixed(kHeight - kMargin + 16)
        << "\" text-anchor=\"middle\">" << compact(f.xmax) << "</text>\n";
    out << "<text x=\"" << fixed(kMargin - 4) << "\" y=\"" << fixed(kHeight - kMargin) << "\" text-anchor=\"end\">"
        << compact(f.ymin) << "</text>\n";
    out << "<text x=\"" << fixed(kMargin - 4) << "\" y=\"" << fixed(kMargin + 4) << "\" text-anchor=\"end\">"
        << compact(f.ymax) << "</text>\n";
}

void svg_polyline(std::ostream& out, const Frame& f, const std::vector<double>& x, const std::vector<double>& y,
                  const char* colour, const char* dash = nullptr) {
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
    if (dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << " points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out << ' ';
        out << fixed(f.px(x[i])) << ',' << fixed(f.py(y[i]));
    }
    out << "\"/>\n";
}

}  // namespace

void render_profile_plot(const std::vector<ProfileCurve>& curves, const std::string& path) {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool first = true;
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            if (first) {
                xmin = xmax = c.x[i];
                ymin = ymax = c.h[i];
                first = false;
            }
            xmin = std::min(xmin, c.x[i]);
            xmax = std::max(xmax, c.x[i]);
            ymin = std::min(ymin, c.h[i]);
            ymax = std::max(ymax, c.h[i]);
        }
    }
    const Frame f = frame_for(xmin, xmax, ymin, ymax);
    auto out = open_out(path);
    svg_axes(out, f, "x", "h");
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const char* colour = kColours[k % kColours.size()];
        svg_polyline(out, f, curves[k].x, curves[k].h, colour);
        out << "<text x=\"" << fixed(kWidth - kMargin - 4) << "\" y=\"" << fixed(kMargin + 16 + 14.0 * k)
            << "\" text-anchor=\"end\" fill=\"" << colour << "\">" << curves[k].label << "</text>\n";
    }
    out << "</svg>\n";
}

void render_decay_plot(const std::vector<std::pair<double, double>>& series, const std::optional<DecayFit>& fit,
                       const std::string& path, const std::string& ylabel) {
    std::vector<double> t, y;
    for (const auto& [ti, v] : series) {
        if (!(v > 0.0)) continue;
        t.push_back(ti);
        y.push_back(std::log10(v));
    }
    auto out = open_out(path);
    if (t.empty()) {
        svg_axes(out, frame_for(0.0, 1.0, 0.0, 1.0), "t", "log10 " + ylabel);
        out << "</svg>\n";
        return;
    }
    const Frame f = frame_for(t.front(), t.back(), *std::min_element(y.begin(), y.end()),
                              *std::max_element(y.begin(), y.end()));
    svg_axes(out, f, "t", "log10 " + ylabel);
    svg_polyline(out, f, t, y, kColours[0]);
    if (fit) {
        const double t0 = std::max(fit->window.lo, t.front());
        const double t1 = std::min(fit->window.hi, t.back());
        const double l10 = std::log(10.0);
        const std::vector<double> ft{t0, t1};
        const std::vector<double> fy{(std::log(fit->prefactor) - fit->omega * t0) / l10,
                                     (std::log(fit->prefactor) - fit->omega * t1) / l10};
        svg_polyline(out, f, ft, fy, kColours[1], "6,4");
        out << "<text x=\"" << fixed(kWidth - kMargin - 4) << "\" y=\"" << fixed(kMargin + 16)
            << "\" text-anchor=\"end\" fill=\"" << kColours[1] << "\">omega = " << compact(fit->omega) << "</text>\n";
    }
    out << "</svg>\n";
}

NondimResult nondimensionalize(const PhysicalParams& p, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.3)) raise(ErrorKind::InvalidArgument, "epsilon must lie in (0, 0.3)");
    if (!(p.theta > 0.0)) raise(ErrorKind::InvalidArgument, "theta must be positive");
    if (!(p.H > 0.0) || !(p.sigma > 0.0) || !(p.mu_L > 0.0))
        raise(ErrorKind::InvalidArgument, "H, sigma and mu_L must be positive");
    if (p.beta_phys < 0.0) raise(ErrorKind::InvalidArgument, "beta_phys must be non-negative");
    NondimResult r;
    r.k = p.theta / epsilon;
    r.length_scale = p.H / epsilon;
    r.beta_bar = epsilon * r.length_scale / p.mu_L * p.beta_phys;
    r.time_scale = r.length_scale * p.mu_L / p.sigma;
    if (r.k > 1.0)
        r.warnings.push_back("ValidityWarning: k = " + format_double(r.k) +
                             " > 1, the contact angle is not small against epsilon");
    return r;
}

NondimInput parse_nondim_input(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        raise(ErrorKind::ParseError, e.what());
    }
    const std::string where = "params";
    check_keys(j, {"H", "sigma", "mu_L", "theta", "beta_phys", "t0", "epsilon"}, where);
    NondimInput in;
    try {
        optional_field(j, "H", [&] { in.params.H = get_number(j, "H", where); });
        optional_field(j, "sigma", [&] { in.params.sigma = get_number(j, "sigma", where); });
        optional_field(j, "mu_L", [&] { in.params.mu_L = get_number(j, "mu_L", where); });
        optional_field(j, "theta", [&] { in.params.theta = get_number(j, "theta", where); });
        optional_field(j, "beta_phys", [&] { in.params.beta_phys = get_number(j, "beta_phys", where); });
        optional_field(j, "t0", [&] { in.params.t0 = get_number(j, "t0", where); });
        optional_field(j, "epsilon", [&] { in.epsilon = get_number(j, "epsilon", where); });
    } catch (const json::exception& e) {
        raise(ErrorKind::ParseError, e.what());
    }
    return in;
}

}  // namespace meniscus
