#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "meniscus/errors.hpp"
#include "meniscus/experiments.hpp"

using namespace meniscus;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({"mode": "periodic", "Lambda_bar": 0.5})";

const char* kSmallRun = R"({
  "mode": "periodic",
  "profile": {"kind": "wedge", "htilde": [0.9], "c": 0.2},
  "k": 0.1,
  "energies": {"a": 0.75, "b": 1, "c": 0},
  "Lambda_bar": 0.5,
  "grid_n": 61,
  "stepper": {"dt": 1e-4, "dt_max": 1e-4},
  "t_end": 1e-3,
  "initial": {"kind": "perturbed", "eps": 0.01, "mode_shape": "random"},
  "seed": 42
})";

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidArgument;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name) {
    const auto d = fs::temp_directory_path() / ("meniscus_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST(Config, MinimalRoundTrip) {
    const auto a = parse_config(kMinimal);
    const auto b = parse_config(serialize_config(a));
    EXPECT_TRUE(a == b);
    EXPECT_EQ(serialize_config(a), serialize_config(b));
}

TEST(Config, FullRoundTrip) {
    auto a = parse_config(kSmallRun);
    a.k.reset();
    a.output.snapshot_stride = 3;
    a.convergence.grids = {11, 21};
    const auto b = parse_config(serialize_config(a));
    EXPECT_TRUE(a == b);
    EXPECT_FALSE(b.k.has_value());
    EXPECT_EQ(b.initial.mode_shape, "random");
    EXPECT_EQ(b.seed, 42u);
}

TEST(Config, UnknownKeyIsNamed) {
    try {
        parse_config(R"({"mode": "periodic", "Lambda_bar": 0.5, "gamma": 1})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParseError);
        EXPECT_NE(std::string(e.what()).find("gamma"), std::string::npos);
    }
    try {
        parse_config(R"({"mode": "periodic", "Lambda_bar": 0.5, "stepper": {"dtt": 1}})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("dtt"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("stepper"), std::string::npos);
    }
}

TEST(Config, SyntaxErrorReportsPosition) {
    try {
        parse_config("{\n  \"mode\": \"periodic\",\n  \"L\": }");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParseError);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(Config, Invariants) {
    EXPECT_EQ(kind_of([] { parse_config(R"({"Lambda_bar": 0.5, "grid_n": 6})"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_config(R"({"Lambda_bar": 0.5, "t_end": 0})"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_config(R"({"Lambda_bar": 0.5, "initial": {"kind": "perturbed", "eps": 0.1}})"); }),
              ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_config(R"({"mode": "periodic"})"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_config(R"({"Lambda_bar": 0.5, "stepper": {"dt": 1, "dt_max": 0.1}})"); }),
              ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_config(R"({"Lambda_bar": 0.5, "profile": {"kind": "cone"}})"); }),
              ErrorKind::ParseError);
    EXPECT_EQ(kind_of([] { parse_config(R"({"Lambda_bar": 0.5, "k": "yes"})"); }), ErrorKind::ParseError);
}

TEST(Config, YoungAngleFromVolume) {
    const auto c = parse_config(R"({"profile": {"kind": "wedge", "htilde": [0.9], "c": 0.2}, "k": "young",
                                    "energies": {"a": 0.75, "b": 1, "c": 0}, "V0": 2.05})");
    const auto p = build_problem(c);
    EXPECT_NEAR(p.k, 0.1, 1e-15);
    EXPECT_NEAR(reference_contact_point(c, p.profile), 0.5, 1e-10);
}

TEST(Perturbation, ModeShapeProperties) {
    const Grid g(401, 0.5, 2.0);
    const auto phi = perturbation_mode(g, 2, 1e-2);
    EXPECT_NEAR(phi.front(), 0.0, 1e-17);
    double mean = 0.0;
    for (int i = 0; i < g.n; ++i) mean += (i == 0 || i == g.n - 1 ? 0.5 : 1.0) * phi[i];
    EXPECT_NEAR(mean * g.dx(), 0.0, 1e-15);
    const auto r1 = random_perturbation(g, 1e-2, 5);
    const auto r2 = random_perturbation(g, 1e-2, 5);
    const auto r3 = random_perturbation(g, 1e-2, 6);
    EXPECT_EQ(r1, r2);
    EXPECT_NE(r1, r3);
    double amp = 0.0;
    for (double v : r1) amp = std::max(amp, std::abs(v));
    EXPECT_NEAR(amp, 1e-2, 1e-17);
}

TEST(Output, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) EXPECT_EQ(std::stod(format_double(v)), v);
    EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Output, DiagnosticsRoundTrip) {
    const auto d = scratch_dir("diag");
    std::vector<DiagnosticsRecord> recs{{0.0, 2.05, 0.02, 0.9, 0.5, 1.0, 0, 0.0},
                                        {1e-4, 2.0500000001, 0.0199, 0.8, 0.5000001, 0.99, 3, 1e-4}};
    write_diag(recs, (d / "a.csv").string());
    const auto back = read_diag((d / "a.csv").string());
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].mass, recs[1].mass);
    EXPECT_EQ(back[1].Lambda, recs[1].Lambda);
    EXPECT_EQ(back[1].newton_iters, 3);
    EXPECT_EQ(slurp(d / "a.csv").substr(0, 55), "t,mass,energy,dissipation,lambda,min_h,newton_iters,dt\n");
    EXPECT_EQ(kind_of([&] { read_diag((d / "missing.csv").string()); }), ErrorKind::IoError);
}

TEST(Simulate, TenStepsGiveTenRows) {
    auto cfg = parse_config(kSmallRun);
    cfg.output.dir = scratch_dir("ten").string();
    const auto rep = simulate(cfg);
    EXPECT_EQ(rep.summary.steps, 10);
    std::ifstream in(fs::path(cfg.output.dir) / "diag.csv");
    int lines = 0;
    for (std::string l; std::getline(in, l);) ++lines;
    EXPECT_EQ(lines, 11);
    const auto svg = slurp(fs::path(cfg.output.dir) / "profile.svg");
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Simulate, DeterministicOutput) {
    auto cfg = parse_config(kSmallRun);
    cfg.output.dir = scratch_dir("det_a").string();
    simulate(cfg);
    const auto a = slurp(fs::path(cfg.output.dir) / "diag.csv");
    const auto sa = slurp(fs::path(cfg.output.dir) / "profile.svg");
    cfg.output.dir = scratch_dir("det_b").string();
    simulate(cfg);
    EXPECT_EQ(a, slurp(fs::path(cfg.output.dir) / "diag.csv"));
    EXPECT_EQ(sa, slurp(fs::path(cfg.output.dir) / "profile.svg"));
}

TEST(Snapshot, ReloadAndContinueMatchesUninterrupted) {
    auto cfg = parse_config(kSmallRun);
    cfg.stepper.dt_max = 1e-3;
    cfg.stepper.grow_after = 2;
    const auto problem = build_problem(cfg);
    const auto init = build_initial_state(cfg, problem);
    const auto d = scratch_dir("snap");

    std::vector<DiagnosticsRecord> full;
    Integrator a(init, problem, cfg.stepper);
    run(a, 0.01, [&](const DiagnosticsRecord& r, const FilmState&) { full.push_back(r); });

    // Stop on a time the uninterrupted run actually visits so no step is clipped.
    ASSERT_GT(full.size(), 8u);
    const double t_cut = full[6].t;
    Integrator b(init, problem, cfg.stepper);
    std::vector<DiagnosticsRecord> part;
    run(b, t_cut, [&](const DiagnosticsRecord& r, const FilmState&) { part.push_back(r); });
    write_snapshot(b.checkpoint(), (d / "cp.json").string());
    auto c = Integrator::resume(read_snapshot((d / "cp.json").string()), problem, cfg.stepper);
    part.pop_back();
    run(c, 0.01, [&](const DiagnosticsRecord& r, const FilmState&) { part.push_back(r); });

    ASSERT_EQ(full.size(), part.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        EXPECT_NEAR(full[i].t, part[i].t, 1e-12);
        EXPECT_NEAR(full[i].mass, part[i].mass, 1e-12);
        EXPECT_NEAR(full[i].energy, part[i].energy, 1e-12);
        EXPECT_NEAR(full[i].dissipation, part[i].dissipation, 1e-12 * (1 + full[i].dissipation));
        EXPECT_NEAR(full[i].Lambda, part[i].Lambda, 1e-12);
    }
}

TEST(Snapshot, ExplicitInitialState) {
    auto cfg = parse_config(kSmallRun);
    const auto problem = build_problem(cfg);
    const auto s = build_initial_state(cfg, problem);
    const auto d = scratch_dir("explicit");
    write_snapshot(s, (d / "s.json").string());
    cfg.initial.kind = "explicit";
    cfg.initial.path = (d / "s.json").string();
    const auto back = build_initial_state(cfg, problem);
    EXPECT_EQ(back.H, s.H);
    EXPECT_EQ(back.Lambda, s.Lambda);
    cfg.grid_n = 31;
    EXPECT_EQ(kind_of([&] { build_initial_state(cfg, problem); }), ErrorKind::InvalidArgument);
}

TEST(Nondim, Examples) {
    PhysicalParams p;
    p.theta = 0.02;
    auto r = nondimensionalize(p, 0.01);
    EXPECT_DOUBLE_EQ(r.k, 2.0);
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_NE(r.warnings[0].find("ValidityWarning"), std::string::npos);
    p = {};
    p.H = 0.1;
    r = nondimensionalize(p, 0.1);
    EXPECT_DOUBLE_EQ(r.length_scale, 1.0);
    EXPECT_DOUBLE_EQ(r.time_scale, 1.0);
    EXPECT_EQ(r.beta_bar, 0.0);
    EXPECT_TRUE(r.warnings.empty());
    p.beta_phys = 2.0;
    p.mu_L = 4.0;
    EXPECT_DOUBLE_EQ(nondimensionalize(p, 0.1).beta_bar, 0.1 * 1.0 / 4.0 * 2.0);
}

TEST(Nondim, Errors) {
    PhysicalParams p;
    EXPECT_EQ(kind_of([&] { nondimensionalize(p, 0.3); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([&] { nondimensionalize(p, 0.0); }), ErrorKind::InvalidArgument);
    p.theta = 0.0;
    EXPECT_EQ(kind_of([&] { nondimensionalize(p, 0.1); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { parse_nondim_input(R"({"H": 1, "Re": 3})"); }), ErrorKind::ParseError);
    EXPECT_DOUBLE_EQ(parse_nondim_input(R"({"theta": 0.05, "epsilon": 0.2})").epsilon, 0.2);
}

#ifdef MENISCUS_CLI
namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MENISCUS_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ExitCodes) {
    const auto d = scratch_dir("cli");
    std::ofstream(d / "bad.json") << R"({"Lambda_bar": 0.5, "gamma": 1})";
    EXPECT_EQ(run_cli("simulate " + (d / "bad.json").string()), 2);
    EXPECT_EQ(run_cli("simulate " + (d / "missing.json").string()), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    std::ofstream(d / "diverge.json") << R"({"profile": {"kind": "wedge", "htilde": [0.9], "c": 0.2}, "k": 0.1,
        "Lambda_bar": 0.5, "grid_n": 101, "t_end": 1,
        "stepper": {"dt": 1, "dt_min": 1, "dt_max": 1, "newton_maxit": 1},
        "initial": {"kind": "perturbed", "eps": 0.05}})";
    EXPECT_EQ(run_cli("simulate " + (d / "diverge.json").string() + " --out " + (d / "o").string()), 3);
    EXPECT_EQ(run_cli("nondim " + std::string(MENISCUS_CONFIGS) + "/nondim.json"), 0);
    EXPECT_EQ(run_cli("equilibrium " + std::string(MENISCUS_CONFIGS) + "/young_volume.json --out " + (d / "e").string()), 0);
    EXPECT_TRUE(fs::exists(d / "e" / "equilibrium.csv"));
}
#endif
