// fracrd: simulate, verify, sweep and convergence front end.

#include "fracrd/output.hpp"
#include "fracrd/runspec.hpp"
#include "fracrd/specfun.hpp"
#include "fracrd/stepper.hpp"
#include "fracrd/verify.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

namespace fs = std::filesystem;
using namespace fracrd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBlowup = 2;

struct Options {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    int workers = 0;
    bool plot = false;
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("fracrd");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    const char* env = std::getenv("FRACRD_LOG");
    const std::string level = env ? env : "error";
    if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else if (level == "info") {
        spdlog::set_level(spdlog::level::info);
    } else {
        if (level != "error") spdlog::warn("FRACRD_LOG={} not recognised, using error", level);
        spdlog::set_level(spdlog::level::err);
    }
}

RunSpec load(const Options& o) {
    RunSpec spec = load_runspec(o.config);
    if (o.seed) spec.seed = *o.seed;
    if (o.out) spec.outputs.dir = *o.out;
    if (o.plot) spec.outputs.plot = true;
    return spec;
}

// Prints every emitted path exactly once.
class Emitted {
public:
    void write(const std::string& path, const std::string& text) {
        write_text(path, text);
        std::lock_guard lock(mu_);
        if (std::find(seen_.begin(), seen_.end(), path) == seen_.end()) {
            seen_.push_back(path);
            std::cout << "wrote " << path << '\n';
        }
    }

private:
    std::mutex mu_;
    std::vector<std::string> seen_;
};

Trajectory run_one(const RunSpec& spec) {
    const Field u0 = make_profile(spec.u, spec.domain, spec.seed);
    const Field v0 = make_profile(spec.v, spec.domain, spec.seed + 1);
    SolverConfig cfg = spec.solver;
    if (!spec.outputs.snapshots) cfg.snapshot_stride = 0;
    return simulate(u0, v0, spec.diffusion, spec.kinetics, cfg);
}

void write_run(const RunSpec& spec, const Trajectory& tr, const fs::path& dir, Emitted& em) {
    em.write((dir / spec.outputs.csv).string(), diagnostics_csv(tr));
    em.write((dir / "status.json").string(), status_json(tr, to_string(spec.solver.scheme), spec.hash()));
    if (spec.outputs.snapshots && !tr.snapshots.empty()) {
        const auto nodes = spec.domain.nodes();
        em.write((dir / "snapshots_u.csv").string(), snapshots_csv(tr, nodes, false));
        em.write((dir / "snapshots_v.csv").string(), snapshots_csv(tr, nodes, true));
    }
    if (spec.outputs.plot) {
        em.write((dir / "diagnostics.svg").string(),
                 trajectory_svg(tr, "regime " + to_string(tr.regime.tag) + ", " + to_string(tr.status)));
    }
}

std::string matches_text(const Regime& r) {
    std::string s;
    for (auto t : r.matches) s += (s.empty() ? "" : ",") + to_string(t);
    return s.empty() ? "none" : s;
}

int cmd_simulate(const Options& o) {
    const RunSpec spec = load(o);
    spdlog::info("simulate: {} steps of dt={} with {}", spec.solver.steps(), spec.solver.dt,
                 to_string(spec.solver.scheme));
    const Trajectory tr = run_one(spec);
    Emitted em;
    write_run(spec, tr, spec.outputs.dir, em);
    std::cout << "regime: " << to_string(tr.regime.tag) << " (clauses matched: " << matches_text(tr.regime) << ")\n";
    std::cout << "status: " << to_string(tr.status);
    if (!tr.message.empty()) std::cout << " (" << tr.message << ")";
    std::cout << '\n';
    if (tr.status == Status::blowup_detected) {
        std::cout << "T_max >= " << format_number(tr.t_max_lower_bound) << '\n';
        return kExitBlowup;
    }
    return tr.status == Status::completed ? kExitOk : kExitError;
}

int cmd_verify(const Options& o) {
    const RunSpec spec = load(o);
    const SuiteConfig cfg = suite_config(spec);
    const VerificationReport rep = run_suite(cfg);
    Emitted em;
    em.write((fs::path(spec.outputs.dir) / "verify_report.json").string(), rep.to_json());
    for (const auto& c : rep.checks) {
        std::printf("%-4s %-48s margin=% .3e tol=%.1e%s\n", c.skipped ? "SKIP" : (c.holds ? "ok" : "FAIL"),
                    c.name.c_str(), c.margin, c.tolerance, c.note.empty() ? "" : ("  " + c.note).c_str());
    }
    std::printf("%d passed, %d failed\n", rep.passed(), rep.failed());
    return rep.all_hold() ? kExitOk : kExitError;
}

int cmd_sweep(const Options& o) {
    const RunSpec spec = load(o);
    auto points = expand_sweep(spec);
    const fs::path root = spec.outputs.dir;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = std::max(1, std::min<int>(o.workers > 0 ? o.workers : static_cast<int>(hw),
                                                  static_cast<int>(points.size())));
    spdlog::info("sweep: {} runs on {} workers", points.size(), workers);

    struct Outcome {
        std::optional<Trajectory> tr;
        std::string error;
    };
    std::vector<Outcome> outcomes(points.size());
    std::atomic<std::size_t> next{0};
    Emitted em;
    auto worker = [&] {
        for (std::size_t k = next++; k < points.size(); k = next++) {
            char name[32];
            std::snprintf(name, sizeof name, "run_%03zu", k);
            try {
                Trajectory tr = run_one(points[k].second);
                write_run(points[k].second, tr, root / name, em);
                outcomes[k].tr = std::move(tr);
            } catch (const std::exception& e) {
                outcomes[k].error = e.what();
                spdlog::error("{}: {}", name, e.what());
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::string csv = "run";
    for (const auto& [path, vals] : spec.sweep) csv += "," + path;
    csv += ",regime,status,max_linf_u,max_linf_v,Lambda_u,Lambda_v,margin_u,margin_v\n";
    bool failed = false;
    for (std::size_t k = 0; k < points.size(); ++k) {
        csv += std::to_string(k);
        for (double x : points[k].first) csv += "," + format_number(x);
        const auto& oc = outcomes[k];
        if (!oc.tr) {
            failed = true;
            csv += ",,error,,,,,,\n";
            continue;
        }
        const Trajectory& tr = *oc.tr;
        double mu = 0, mv = 0;
        for (const auto& r : tr.rows) {
            mu = std::max(mu, r.linf_u);
            mv = std::max(mv, r.linf_v);
        }
        csv += "," + to_string(tr.regime.tag) + "," + to_string(tr.status) + "," + format_number(mu) + "," +
               format_number(mv);
        if (tr.weights) {
            const auto [lu, lv] = linf_bounds(tr.regime, tr.Lambda);
            csv += "," + format_number(lu) + "," + format_number(lv) + "," + format_number(1.0 - mu / lu) + "," +
                   format_number(1.0 - mv / lv) + "\n";
        } else {
            csv += ",,,,\n";
        }
    }
    em.write((root / "sweep_summary.csv").string(), csv);
    return failed ? kExitError : kExitOk;
}

int cmd_converge(const Options& o) {
    const RunSpec spec = load(o);
    LinearModeProblem p;
    p.domain = spec.domain;
    p.mode = spec.converge.mode;
    p.amplitude = spec.converge.amplitude;
    p.d = spec.diffusion.d_u;
    p.sigma = spec.diffusion.sigma1;
    p.rho = spec.diffusion.rho;
    p.t_end = spec.solver.t_end;
    const ConvergenceResult res = convergence_study(p, spec.solver.scheme, spec.converge.dts);
    std::string csv = "dt,relative_error\n";
    for (std::size_t k = 0; k < res.dts.size(); ++k) {
        csv += format_number(res.dts[k]) + "," + format_number(res.errors[k]) + "\n";
    }
    Emitted em;
    const fs::path dir = spec.outputs.dir;
    em.write((dir / "convergence.csv").string(), csv);
    if (spec.outputs.plot) {
        Series s{"relative error", res.errors};
        em.write((dir / "convergence.svg").string(), svg_chart("error vs dt", res.dts, {s}, true));
    }
    if (res.slope) {
        std::printf("observed order: %.4f\n", *res.slope);
    } else {
        std::printf("errors at roundoff level; no order computed\n");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Time-space fractional reaction-diffusion solver and invariant checks"};
    app.require_subcommand(1);
    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", opt.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "output directory (overrides outputs.dir)");
        sub->add_option("--seed", opt.seed, "seed for random profiles and the verification suite");
        sub->add_flag("--plot", opt.plot, "also write SVG charts");
    };
    auto* sim = app.add_subcommand("simulate", "run one simulation");
    auto* ver = app.add_subcommand("verify", "run the verification suite");
    auto* swp = app.add_subcommand("sweep", "run a cartesian parameter grid");
    auto* cnv = app.add_subcommand("converge", "time-step convergence study on a single mode");
    for (auto* s : {sim, ver, swp, cnv}) add_common(s);
    swp->add_option("--workers", opt.workers, "concurrent runs (default: hardware threads)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (*sim) return cmd_simulate(opt);
        if (*ver) return cmd_verify(opt);
        if (*swp) return cmd_sweep(opt);
        if (*cnv) return cmd_converge(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
