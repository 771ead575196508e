#pragma once

// Numerical checks of the inequalities behind the global existence argument:
// the Lyapunov functional and the L-infinity bounds it yields, the maximum
// principle, Stroock-Varopoulos, the pointwise positivity lemma, a weakly
// singular Gronwall bound, and two Caputo calculus lemmas.
//
// Every check reports a signed margin (negative means violated) and holds
// exactly when margin >= -tolerance.

#include "fracrd/operators.hpp"
#include "fracrd/reactions.hpp"
#include "fracrd/stepper.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fracrd {

// Per-check tolerances, kept in one place.
struct Tolerances {
    static constexpr double lyapunov = 1e-6;
    static constexpr double linf_slack = 0.02;
    static constexpr double max_principle = 1e-10;
    static constexpr double stroock_varopoulos = 1e-10;
    static constexpr double positivity = 1e-15;
    static constexpr double gronwall = 0.01;
    static constexpr double convexity = 1e-8;
    static constexpr double frac_identity = 1e-2;
    static constexpr double p_rho = 1e-12;
};

struct CheckResult {
    std::string name;
    bool holds = false;
    bool skipped = false;
    double margin = 0.0;
    double tolerance = 0.0;
    std::vector<std::pair<std::string, double>> context;
    std::string note;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::uint64_t seed = 0;
    std::string config_hash;

    int passed() const;
    int failed() const;
    bool all_hold() const { return failed() == 0; }
    /// Pretty-printed JSON document.
    std::string to_json() const;
};

/// int (delta1 u^p + delta2 v^q) dx on the grid quadrature.
double lyapunov_value(const Field& u, const Field& v, const LyapunovWeights& w);

/// L(t_n) <= L(0) and L(0) <= |Omega| (delta1 Lambda^p + delta2 Lambda^q),
/// both relative to tol. Throws RegimeMismatch unless the run is in regime I/II.
CheckResult check_lyapunov_monotone(const Trajectory& traj, const LyapunovWeights& w, double tol);

CheckResult check_linf_bounds(const Trajectory& traj, std::pair<double, double> bounds, double slack);

/// Each row's sup norm stays below the initial one (per species).
CheckResult check_max_principle(const Trajectory& traj);

/// int u^{p-1} (-Delta)^sigma u >= 4 (p-1) / p^2 |u^{p/2}|^2_{H^sigma}.
CheckResult check_stroock_varopoulos(const Field& u, double p, double sigma);

/// Equality case of psi <= psi0 + C I^alpha psi solved by the explicit
/// product-rectangle rule on n_steps, compared with psi0 E_{alpha,1}(C t^alpha).
CheckResult check_gronwall(double alpha, double C, double psi0, double T, int n_steps);

/// D^rho phi(x) <= phi'(x) D^rho x at n_samples times in (0, T], both sides by
/// the L1 rule on a grid 16 times finer.
CheckResult check_caputo_convexity(const std::function<double(double)>& x, double T, double rho,
                                   const std::function<double(double)>& phi,
                                   const std::function<double(double)>& dphi, int n_samples);

/// I^rho (D^rho f) = f - f(0) with the L1 derivative and the product-rectangle
/// fractional integral on n_steps; holds when the max error is below tol.
CheckResult check_frac_identity(const std::function<double(double)>& f, double rho, double T,
                                int n_steps, double tol);

/// Empirical bound on |t^{1-rho} P_rho(t) w|_{H^sigma} / |w|_{H^sigma} over
/// the t grid; holds when finite and at most 1/Gamma(rho).
CheckResult check_p_rho_bound(double sigma, double rho, double d, const std::vector<Field>& fields,
                              const std::vector<double>& t_grid);

/// Smooth nonnegative profile: a sum of one to four Gaussian bumps centred in
/// the middle of the interval, scaled to sup norm Lambda.
Field random_nonnegative_field(const Domain1D& dom, std::mt19937_64& rng, double Lambda);

struct SuiteConfig {
    std::uint64_t seed = 1;
    Domain1D domain{1.0, 128, Boundary::neumann, Exterior::boundary};
    DiffusionParams diffusion{1.0, 0.5, 0.5, 0.7, 0.7};
    KineticParams kinetics{1.0, 2.0, 3.0, 1.0, 1.0, 1.0};
    SolverConfig solver{};
    std::optional<std::pair<Field, Field>> initial;  // default: 1/2 (1 - cos(2 pi x / L)) for both
    int random_fields = 20;
    int random_tuples = 10000;
    int convexity_paths = 10;
    // Feed every check a deliberately broken input instead.
    bool corrupt = false;
    std::string config_hash;
};

VerificationReport run_suite(const SuiteConfig& cfg);

}  // namespace fracrd
