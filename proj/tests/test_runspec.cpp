#include "fracrd/output.hpp"
#include "fracrd/runspec.hpp"

#include "gen.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

using namespace fracrd;
using json = nlohmann::json;

namespace {

json base() {
    return json::parse(R"({
      "domain": {"length": 2.0, "n_modes": 32, "boundary": "neumann"},
      "kinetics": {"alpha1": 1, "alpha2": 2, "beta1": 3, "beta2": 1, "k_f": 1, "k_b": 1},
      "diffusion": {"d_u": 1, "d_v": 0.5, "sigma1": 0.5, "sigma2": 0.7, "rho": 0.7},
      "initial": {"u": {"profile": "constant", "c": 1.0},
                  "v": {"profile": "bump", "center": 0.3, "width": 0.1}},
      "solver": {"scheme": "L1_IMEX", "dt": 0.01, "t_end": 0.1}
    })");
}

std::string error_path(const json& doc) {
    try {
        parse_runspec(doc);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<none>";
}

}  // namespace

TEST_CASE("a complete config parses with defaults filled in") {
    const RunSpec s = parse_runspec(base());
    CHECK(s.domain.length == 2.0);
    CHECK(s.domain.boundary == Boundary::neumann);
    CHECK(s.kinetics.beta1 == 3.0);
    CHECK(s.diffusion.sigma2 == 0.7);
    CHECK(s.solver.scheme == Scheme::l1_imex);
    CHECK(s.solver.blowup_threshold == 1e8);
    CHECK(s.u.kind == "constant");
    CHECK(s.v.height == 1.0);
    CHECK(s.outputs.csv == "diagnostics.csv");
    CHECK(s.seed == 1);
    CHECK(s.sweep.empty());
}

TEST_CASE("errors carry the offending field path") {
    auto with = [](const char* section, const char* key, json value) {
        json d = base();
        d[section][key] = std::move(value);
        return d;
    };
    CHECK(error_path(with("kinetics", "alpha1", -1)) == "kinetics.alpha1");
    CHECK(error_path(with("kinetics", "beta2", "x")) == "kinetics.beta2");
    CHECK(error_path(with("kinetics", "k_f", 0)) == "kinetics.k_f");
    CHECK(error_path(with("diffusion", "rho", 1.5)) == "diffusion.rho");
    CHECK(error_path(with("diffusion", "sigma1", 1.0)) == "diffusion.sigma1");
    CHECK(error_path(with("domain", "boundary", "periodic")) == "domain.boundary");
    CHECK(error_path(with("domain", "n_modes", 2)) == "domain.n_modes");
    CHECK(error_path(with("solver", "scheme", "RK4")) == "solver.scheme");
    CHECK(error_path(with("solver", "dt", -0.1)) == "solver.dt");

    json d = base();
    d["kinetics"].erase("alpha2");
    CHECK(error_path(d) == "kinetics.alpha2");
    d = base();
    d["initial"]["u"] = json{{"profile", "constant"}, {"c", 0.0}};
    CHECK(error_path(d) == "initial.u.c");
    d = base();
    d["initial"].erase("v");
    CHECK(error_path(d) == "initial.v");
    d = base();
    d["sweep"] = json{{"grid", {{"kinetics.k_f", json::array()}}}};
    CHECK(error_path(d) == "sweep.grid.kinetics.k_f");
    CHECK(error_path(json::array()) == "<root>");

    // the message itself leads with the path
    try {
        parse_runspec(with("kinetics", "alpha1", -1));
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).rfind("kinetics.alpha1", 0) == 0);
    }
}

TEST_CASE("load_runspec reports unreadable and malformed files") {
    CHECK_THROWS_AS(load_runspec("/nonexistent/config.json"), ConfigError);
    const std::string path = "runspec_malformed.json";
    write_text(path, "{\"domain\": ");
    CHECK_THROWS_AS(load_runspec(path), ConfigError);
    write_text(path, base().dump());
    CHECK(load_runspec(path).domain.n_modes == 32);
}

TEST_CASE("profiles") {
    const Domain1D d{1.0, 64, Boundary::dirichlet, Exterior::boundary};
    const Domain1D n{1.0, 64, Boundary::neumann, Exterior::boundary};
    ProfileSpec p;
    p.kind = "single_mode";
    p.k = 2;
    p.amplitude = 0.5;
    p.offset = 1.0;
    const auto xd = d.nodes();
    const auto fd = make_profile(p, d, 0).nodal();
    const auto fn = make_profile(p, n, 0).nodal();
    const auto xn = n.nodes();
    for (int j = 0; j < 64; ++j) {
        CHECK(fd[j] == doctest::Approx(1.0 + 0.5 * std::sin(2 * std::numbers::pi * xd[j])).epsilon(1e-12));
        CHECK(fn[j] == doctest::Approx(1.0 + 0.5 * std::cos(2 * std::numbers::pi * xn[j])).epsilon(1e-12));
    }

    p = ProfileSpec{};
    p.kind = "bump";
    p.center = 0.5;
    p.width = 0.1;
    p.height = 3.0;
    const Field b = make_profile(p, n, 0);
    CHECK(b.sup_norm() == doctest::Approx(3.0).epsilon(1e-2));
    CHECK(b.min() > 0.0);

    // random profiles follow their own seed, else the fallback
    p = ProfileSpec{};
    p.kind = "random";
    const auto r1 = make_profile(p, n, 7).nodal();
    const auto r2 = make_profile(p, n, 7).nodal();
    const auto r3 = make_profile(p, n, 8).nodal();
    CHECK(r1 == r2);
    CHECK(r1 != r3);
    p.seed = 7;
    CHECK(make_profile(p, n, 99).nodal() == r1);
    for (double x : r1) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0 + 1e-12);
    }
}

TEST_CASE("sweep expansion is row-major with the last axis fastest") {
    json d = base();
    d["sweep"] = json::parse(R"({"grid": {"kinetics.k_f": [1, 2], "diffusion.rho": [0.5, 0.9]}})");
    d["seed"] = 42;
    RunSpec s = parse_runspec(d);
    s.outputs.plot = true;
    REQUIRE(s.sweep.size() == 2);
    const auto runs = expand_sweep(s);
    REQUIRE(runs.size() == 4);
    // nlohmann::json objects iterate keys in sorted order
    CHECK(s.sweep[0].first == "diffusion.rho");
    const double expect[4][2] = {{0.5, 1}, {0.5, 2}, {0.9, 1}, {0.9, 2}};
    for (int i = 0; i < 4; ++i) {
        CHECK(runs[i].first == std::vector<double>{expect[i][0], expect[i][1]});
        CHECK(runs[i].second.diffusion.rho == expect[i][0]);
        CHECK(runs[i].second.kinetics.k_f == expect[i][1]);
        CHECK(runs[i].second.sweep.empty());
        CHECK(runs[i].second.seed == 42);
        CHECK(runs[i].second.outputs.plot);
    }
    // a sweep value that fails validation surfaces as a ConfigError
    d["sweep"] = json::parse(R"({"grid": {"diffusion.rho": [0.5, 2.0]}})");
    CHECK_THROWS_AS(expand_sweep(parse_runspec(d)), ConfigError);

    CHECK(expand_sweep(parse_runspec(base())).size() == 1);
}

TEST_CASE("config hash is stable and sensitive") {
    const RunSpec a = parse_runspec(base());
    const RunSpec b = parse_runspec(json::parse(base().dump()));
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    json d = base();
    d["solver"]["dt"] = 0.02;
    CHECK(parse_runspec(d).hash() != a.hash());
}

TEST_CASE("suite config mirrors the run spec") {
    json d = base();
    d["verify"] = json{{"random_fields", 3}, {"corrupt", true}};
    d["seed"] = 5;
    const RunSpec s = parse_runspec(d);
    const SuiteConfig c = suite_config(s);
    CHECK(c.seed == 5);
    CHECK(c.random_fields == 3);
    CHECK(c.corrupt);
    CHECK(c.config_hash == s.hash());
    REQUIRE(c.initial.has_value());
    CHECK(c.initial->first.sup_norm() == 1.0);
}

TEST_CASE("number formatting round-trips") {
    CHECK(format_number(0.0) == "0.0000000000000000e+00");
    CHECK(format_number(-1.5) == "-1.5000000000000000e+00");
    gen::for_all(1000, 17, [](gen::Gen& g, int) {
        const double x = g.coin() ? g.log_uniform(1e-300, 1e300) : -g.uniform(0, 1);
        CHECK(std::stod(format_number(x)) == x);
    });
}

TEST_CASE("diagnostics csv layout") {
    Trajectory tr;
    DiagnosticRow r0;
    r0.linf_u = 1.0;
    DiagnosticRow r1 = r0;
    r1.t = 0.5;
    r1.lyapunov = 2.25;
    tr.rows = {r0, r1};
    const std::string csv = diagnostics_csv(tr);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == kCsvHeader);
    std::getline(in, line);
    CHECK(line.back() == ',');  // lyapunov column left empty
    CHECK(std::count(line.begin(), line.end(), ',') == 7);
    CHECK(line.rfind("0.0000000000000000e+00,1.0000000000000000e+00,", 0) == 0);
    std::getline(in, line);
    CHECK(line.substr(line.rfind(',') + 1) == "2.2500000000000000e+00");
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.back() == '\n');
}

TEST_CASE("status document") {
    Trajectory tr;
    tr.rows.resize(3);
    tr.rows.back().t = 1.25;
    tr.status = Status::blowup_detected;
    tr.steps_taken = 2;
    tr.regime.tag = RegimeTag::III;
    tr.regime.matches = {RegimeTag::III, RegimeTag::IV};
    const json j = json::parse(status_json(tr, "L1_IMEX", "abc"));
    CHECK(j["status"] == to_string(Status::blowup_detected));
    CHECK(j["rows"] == 3);
    CHECK(j["steps_taken"] == 2);
    CHECK(j["t_final"] == 1.25);
    CHECK(j["final_row_flagged"] == true);
    CHECK(j["regime"] == "III");
    CHECK(j["regime_matches"].size() == 2);
    CHECK(j["config_hash"] == "abc");
    CHECK(j["scheme"] == "L1_IMEX");
}

TEST_CASE("svg chart is a self-contained document") {
    const std::string svg = svg_chart("t", {0, 1, 2}, {{"a", {1, 2, 4}}, {"b", {1, 1e-3, 1e-6}}}, true);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
}
