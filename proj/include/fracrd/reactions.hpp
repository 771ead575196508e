#pragma once

// Reversible mass-action kinetics  alpha1 U + beta1 V <-> alpha2 U + beta2 V
// and the parameter classes under which solutions stay globally bounded.

#include <string>
#include <utility>
#include <vector>

namespace fracrd {

struct KineticParams {
    double alpha1 = 1.0;
    double alpha2 = 2.0;
    double beta1 = 3.0;
    double beta2 = 1.0;
    double k_f = 1.0;
    double k_b = 1.0;

    void validate() const;
};

struct DiffusionParams {
    double d_u = 1.0;
    double d_v = 1.0;
    double sigma1 = 0.5;
    double sigma2 = 0.5;
    double rho = 1.0;

    void validate() const;
};

enum class RegimeTag { I, II, III, IV, V, VI, None };

std::string to_string(RegimeTag tag);

struct Regime {
    RegimeTag tag = RegimeTag::None;
    double alpha_hat = 0.0;  // |alpha2 - alpha1|
    double beta_hat = 0.0;   // |beta1 - beta2|
    // Every clause the parameters satisfy, in order; tag is the first.
    std::vector<RegimeTag> matches;
};

struct LyapunovWeights {
    double p = 2.0;
    double q = 2.0;
    double delta1 = 1.0;
    double delta2 = 1.0;
};

struct Rates {
    double f = 0.0;
    double g = 0.0;
};

/// u^a with 0^0 = 1.
double mass_action_power(double u, double a);

/// k_f u^a1 v^b1 - k_b u^a2 v^b2 on clamped arguments.
double rate_bracket(double u, double v, const KineticParams& kp, double clamp_tol = 1e-12);

/// f = (alpha2 - alpha1) B, g = (beta2 - beta1) B with B the rate bracket.
/// Values in [-clamp_tol, 0) are treated as 0; anything below throws.
Rates reaction_rates(double u, double v, const KineticParams& kp, double clamp_tol = 1e-12);

Regime classify_regime(const KineticParams& kp, const DiffusionParams& dp);

LyapunovWeights lyapunov_weights(const Regime& regime, double p);

/// (Lambda_u, Lambda_v) = (max(2, 2 Lambda^{b/a}), (2 (b/a)^2 + 1) max(1, Lambda)).
std::pair<double, double> linf_bounds(const Regime& regime, double Lambda);

/// Linear growth constant C with g(u, v) <= C v for 0 <= u <= u_sup, v >= 0,
/// when alpha1 = alpha2. Throws RegimeMismatch outside that class and
/// ParameterError when g / v is unbounded near v = 0.
double growth_constant_v(const KineticParams& kp, double u_sup);

struct PointwiseCheck {
    double value = 0.0;
    bool holds = false;
};

/// (x^s - y^t)(x^{rs/t} - y^r), nonnegative whenever x, y >= 0, r > 0 and
/// s > t > 0. holds allows -1e-15 times the magnitude of the factors.
PointwiseCheck check_pointwise_inequality(double x, double y, double r, double s, double t);

}  // namespace fracrd
