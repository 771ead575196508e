#pragma once

// Time integration of
//   D^rho u + d_u (-Delta)^sigma1 u = f(u, v)
//   D^rho v + d_v (-Delta)^sigma2 v = g(u, v)
// in spectral space, with either the L1 discretization of the Caputo
// derivative (linear part implicit, reaction lagged) or the Mittag-Leffler
// variation-of-constants formula with piecewise-constant reaction history.

#include "fracrd/operators.hpp"
#include "fracrd/reactions.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fracrd {

enum class Scheme { l1_imex, ml_mild };
enum class Status { completed, blowup_detected, scheme_failure };

std::string to_string(Scheme s);
std::string to_string(Status s);

struct SolverConfig {
    double dt = 1.0 / 512;
    double t_end = 1.0;
    Scheme scheme = Scheme::l1_imex;
    double blowup_threshold = 1e8;
    // Secondary blow-up trigger: sup norm grows by growth_factor within
    // growth_window steps while above its initial value.
    double growth_factor = 10.0;
    int growth_window = 10;
    int snapshot_stride = 0;  // 0 disables snapshots
    double clamp_tol = 1e-12;
    double lyapunov_p = 2.0;

    void validate() const;
    /// Number of steps, t_end / dt rounded; throws unless dt divides t_end.
    int steps() const;
};

/// L1 weights b_j = ((j+1)^{1-rho} - j^{1-rho}) dt^{-rho} / Gamma(2-rho), j < n.
/// For rho = 1 a single weight 1/dt.
std::vector<double> caputo_l1_coeffs(double rho, double dt, int n);

struct StepCache;

/// Per-species memory of a run: spectral increments w^m - w^{m-1} for the L1
/// scheme, spectral reaction coefficients for the mild scheme.
struct SpeciesHistory {
    std::vector<double> initial;
    std::vector<std::vector<double>> terms;
};

struct SolverState {
    SolverState(Field u0, Field v0);

    int n = 0;
    double t = 0.0;
    Field u;
    Field v;
    SpeciesHistory hist_u;
    SpeciesHistory hist_v;
    // Multiply-adds spent on history sums, total and in the latest step.
    std::uint64_t history_ops = 0;
    std::uint64_t last_step_ops = 0;
    // Smallest nodal value seen before clamping, over all steps so far.
    double min_before_clamp;

    std::shared_ptr<StepCache> cache;
};

/// Advances one step of size cfg.dt. Throws SchemeFailure on non-finite values.
void step_l1_imex(SolverState& state, const SolverConfig& cfg, const DiffusionParams& dp,
                  const KineticParams& kp);
void step_ml_mild(SolverState& state, const SolverConfig& cfg, const DiffusionParams& dp,
                  const KineticParams& kp);

struct DiagnosticRow {
    double t = 0.0;
    double linf_u = 0.0;
    double linf_v = 0.0;
    double l2_u = 0.0;
    double l2_v = 0.0;
    double mass_u = 0.0;
    double mass_v = 0.0;
    std::optional<double> lyapunov;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v;
};

struct Trajectory {
    std::vector<DiagnosticRow> rows;
    std::vector<Snapshot> snapshots;
    Status status = Status::completed;
    std::string message;
    // Time up to which the solution stayed finite and below the threshold.
    double t_max_lower_bound = 0.0;
    double Lambda = 0.0;
    double domain_measure = 0.0;
    Regime regime;
    std::optional<LyapunovWeights> weights;
    double min_before_clamp = 0.0;
    std::uint64_t history_ops = 0;
    int steps_taken = 0;
};

DiagnosticRow diagnostics(double t, const Field& u, const Field& v,
                          const std::optional<LyapunovWeights>& w);

/// Runs cfg.scheme from (u0, v0) to cfg.t_end or until blow-up is detected.
/// Throws ParameterError for negative or identically zero initial data.
Trajectory simulate(const Field& u0, const Field& v0, const DiffusionParams& dp,
                    const KineticParams& kp, const SolverConfig& cfg);

/// Pure fractional diffusion of one eigenmode, u0 = amplitude * e_i; the exact
/// solution is amplitude * E_{rho,1}(-d mu_i^sigma t^rho) e_i.
struct LinearModeProblem {
    Domain1D domain;
    int mode = 0;
    double amplitude = 1.0;
    double d = 1.0;
    double sigma = 0.5;
    double rho = 0.5;
    double t_end = 1.0;

    double exact_coefficient(double t) const;
};

struct ConvergenceResult {
    std::vector<double> dts;
    std::vector<double> errors;  // relative sup-norm error at t_end
    std::optional<double> slope;  // least squares in log-log; absent when errors are at roundoff
};

/// Errors of the configured scheme for each dt (at least three, each half the
/// previous).
ConvergenceResult convergence_study(const LinearModeProblem& problem, Scheme scheme,
                                    const std::vector<double>& dts);

}  // namespace fracrd
