#include "fracrd/reactions.hpp"

#include "fracrd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracrd {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

double clamp_input(double x, double tol, const char* name) {
    if (std::isnan(x)) throw std::domain_error(std::string("reaction_rates: ") + name + " is NaN");
    if (x >= 0.0) return x;
    if (x >= -tol) return 0.0;
    std::ostringstream os;
    os << "reaction_rates: " << name << " = " << x << " is negative beyond the clamp tolerance";
    throw std::domain_error(os.str());
}

}  // namespace

void KineticParams::validate() const {
    const std::pair<const char*, double> stoich[] = {
        {"alpha1", alpha1}, {"alpha2", alpha2}, {"beta1", beta1}, {"beta2", beta2}};
    for (const auto& [name, value] : stoich) {
        if (!finite_nonneg(value)) {
            throw ParameterError(std::string("kinetics.") + name + " must be finite and >= 0");
        }
    }
    if (!(k_f > 0.0) || !std::isfinite(k_f)) throw ParameterError("kinetics.k_f must be > 0");
    if (!(k_b > 0.0) || !std::isfinite(k_b)) throw ParameterError("kinetics.k_b must be > 0");
}

void DiffusionParams::validate() const {
    if (!(d_u > 0.0) || !std::isfinite(d_u)) throw ParameterError("diffusion.d_u must be > 0");
    if (!(d_v > 0.0) || !std::isfinite(d_v)) throw ParameterError("diffusion.d_v must be > 0");
    if (!(sigma1 > 0.0 && sigma1 < 1.0)) throw ParameterError("diffusion.sigma1 must lie in (0, 1)");
    if (!(sigma2 > 0.0 && sigma2 < 1.0)) throw ParameterError("diffusion.sigma2 must lie in (0, 1)");
    if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("diffusion.rho must lie in (0, 1]");
}

std::string to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::I: return "I";
        case RegimeTag::II: return "II";
        case RegimeTag::III: return "III";
        case RegimeTag::IV: return "IV";
        case RegimeTag::V: return "V";
        case RegimeTag::VI: return "VI";
        case RegimeTag::None: return "None";
    }
    return "None";
}

double mass_action_power(double u, double a) {
    if (a == 0.0) return 1.0;
    if (u == 0.0) return 0.0;
    if (a == 1.0) return u;
    return std::pow(u, a);
}

double rate_bracket(double u, double v, const KineticParams& kp, double clamp_tol) {
    u = clamp_input(u, clamp_tol, "u");
    v = clamp_input(v, clamp_tol, "v");
    const double fwd = kp.k_f * mass_action_power(u, kp.alpha1) * mass_action_power(v, kp.beta1);
    const double bwd = kp.k_b * mass_action_power(u, kp.alpha2) * mass_action_power(v, kp.beta2);
    return fwd - bwd;
}

Rates reaction_rates(double u, double v, const KineticParams& kp, double clamp_tol) {
    const double b = rate_bracket(u, v, kp, clamp_tol);
    return {(kp.alpha2 - kp.alpha1) * b, (kp.beta2 - kp.beta1) * b};
}

Regime classify_regime(const KineticParams& kp, const DiffusionParams& dp) {
    kp.validate();
    dp.validate();
    const double a1 = kp.alpha1, a2 = kp.alpha2, b1 = kp.beta1, b2 = kp.beta2;
    // Configured rates are structural, so they are compared exactly.
    const bool equal_rates = kp.k_f == kp.k_b;
    const bool classical_time = dp.rho == 1.0;
    const bool ordered_sigma = dp.sigma1 <= dp.sigma2;

    Regime r;
    r.alpha_hat = std::fabs(a2 - a1);
    r.beta_hat = std::fabs(b1 - b2);
    if (0 < a1 && a1 < a2 && 0 < b2 && b2 < b1 && a1 + b1 > a2 + b2 && equal_rates) {
        r.matches.push_back(RegimeTag::I);
    }
    if (0 < a2 && a2 < a1 && 0 < b1 && b1 < b2 && a1 + b1 < a2 + b2 && equal_rates) {
        r.matches.push_back(RegimeTag::II);
    }
    if (a1 == a2) r.matches.push_back(RegimeTag::III);
    if (b1 == b2) r.matches.push_back(RegimeTag::IV);
    if (classical_time && ordered_sigma && 0 < a1 && a1 < a2 && 0 < b1 && b1 < b2 && a1 + b1 <= 1) {
        r.matches.push_back(RegimeTag::V);
    }
    if (classical_time && ordered_sigma && 0 < a2 && a2 < a1 && 0 < b2 && b2 < b1 && a2 + b2 <= 1) {
        r.matches.push_back(RegimeTag::VI);
    }
    r.tag = r.matches.empty() ? RegimeTag::None : r.matches.front();
    return r;
}

LyapunovWeights lyapunov_weights(const Regime& regime, double p) {
    if (regime.tag != RegimeTag::I && regime.tag != RegimeTag::II) {
        throw RegimeMismatch("lyapunov_weights: defined for regimes I and II only, got " +
                             to_string(regime.tag));
    }
    if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("lyapunov_weights: p must exceed 1");
    LyapunovWeights w;
    w.p = p;
    w.q = (p - 1.0) * regime.beta_hat / regime.alpha_hat + 1.0;
    w.delta1 = 1.0 / (p * regime.alpha_hat);
    w.delta2 = 1.0 / (w.q * regime.beta_hat);
    return w;
}

std::pair<double, double> linf_bounds(const Regime& regime, double Lambda) {
    if (regime.tag != RegimeTag::I && regime.tag != RegimeTag::II) {
        throw RegimeMismatch("linf_bounds: defined for regimes I and II only, got " +
                             to_string(regime.tag));
    }
    if (!(Lambda > 0.0) || !std::isfinite(Lambda)) {
        throw ParameterError("linf_bounds: Lambda must be positive");
    }
    const double ratio = regime.beta_hat / regime.alpha_hat;
    const double lu = std::max(2.0, 2.0 * std::pow(Lambda, ratio));
    const double lv = (2.0 * ratio * ratio + 1.0) * std::max(1.0, Lambda);
    return {lu, lv};
}

double growth_constant_v(const KineticParams& kp, double u_sup) {
    kp.validate();
    if (kp.alpha1 != kp.alpha2) {
        throw RegimeMismatch("growth_constant_v: requires alpha1 == alpha2");
    }
    if (!(u_sup >= 0.0)) throw ParameterError("growth_constant_v: u_sup must be >= 0");
    if (kp.beta1 == kp.beta2) return 0.0;
    // g / v = |beta2 - beta1| u^alpha (k_lead v^a - k_other v^b), b > a, where
    // the leading term is the one producing v.
    const bool forward_produces = kp.beta2 > kp.beta1;
    const double k_lead = forward_produces ? kp.k_f : kp.k_b;
    const double k_other = forward_produces ? kp.k_b : kp.k_f;
    const double a = (forward_produces ? kp.beta1 : kp.beta2) - 1.0;
    const double b = (forward_produces ? kp.beta2 : kp.beta1) - 1.0;
    if (a < 0.0) {
        throw ParameterError("growth_constant_v: g(u, v) / v is unbounded as v -> 0");
    }
    double peak = 0.0;
    if (a == 0.0) {
        peak = k_lead;
    } else {
        const double v_star = std::pow(k_lead * a / (k_other * b), 1.0 / (b - a));
        peak = k_lead * std::pow(v_star, a) - k_other * std::pow(v_star, b);
    }
    return std::fabs(kp.beta2 - kp.beta1) * mass_action_power(u_sup, kp.alpha1) * peak;
}

PointwiseCheck check_pointwise_inequality(double x, double y, double r, double s, double t) {
    // No argument validation: inadmissible tuples simply report whether the
    // product happens to be nonnegative.
    const double a1 = std::pow(x, s);
    const double a2 = std::pow(y, t);
    const double b1 = std::pow(x, r * s / t);
    const double b2 = std::pow(y, r);
    PointwiseCheck c;
    c.value = (a1 - a2) * (b1 - b2);
    const double scale = std::max(1.0, (a1 + a2) * (b1 + b2));
    c.holds = std::isfinite(c.value) && c.value >= -1e-15 * scale;
    return c;
}

}  // namespace fracrd
