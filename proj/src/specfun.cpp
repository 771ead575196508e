#include "fracrd/specfun.hpp"

#include "fracrd/errors.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace fracrd::specfun {

namespace {

using ld = long double;
using cld = std::complex<long double>;

constexpr ld kEpsLd = std::numeric_limits<ld>::epsilon();
constexpr ld kPiLd = 3.141592653589793238462643383279502884L;

// Largest argument for which Gamma(x) is finite in double precision.
constexpr double kGammaOverflow = 171.62437695630272;

// Series are trusted for z < 0 only up to this X = |z|^{1/alpha}; the
// largest Taylor term grows roughly like exp(X).
constexpr double kSeriesMaxX = 14.0;
// The asymptotic expansion's smallest term behaves like exp(-X).
constexpr double kAsymptoticMinX = 40.0;
constexpr double kAsymptoticMinPositiveX = 20.0;

constexpr int kAsymptoticTerms = 400;
constexpr int kContourNodes = 32;

// Neumaier's variant of compensated summation.
struct CompensatedSum {
    ld sum = 0.0L;
    ld comp = 0.0L;

    void add(ld x) {
        const ld t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    ld value() const { return sum + comp; }
};

bool is_nonpositive_integer(long double x) {
    return x <= 0.0L && x == std::floor(x);
}

// sin(pi x) with the argument reduced first so large |x| keeps its digits.
ld sin_pi(ld x) {
    ld r = std::fmod(x, 2.0L);
    if (r > 1.0L) r -= 2.0L;
    if (r < -1.0L) r += 2.0L;
    return std::sin(kPiLd * r);
}

std::string describe(double alpha, double beta, double z) {
    std::ostringstream os;
    os.precision(17);
    os << "E_{" << alpha << "," << beta << "}(" << z << ")";
    return os.str();
}

}  // namespace

void PrecisionPolicy::validate() const {
    if (!(target_abs_tol > 0.0)) {
        throw ParameterError("PrecisionPolicy: target_abs_tol must be positive");
    }
    if (max_series_terms < 50) {
        throw ParameterError("PrecisionPolicy: max_series_terms must be at least 50");
    }
}

double gamma_fn(double x) {
    if (std::isnan(x)) {
        throw ParameterError("gamma_fn: NaN argument");
    }
    if (is_nonpositive_integer(x)) {
        std::ostringstream os;
        os << "gamma_fn: pole at x = " << x;
        throw PoleError(os.str());
    }
    if (x > kGammaOverflow) {
        std::ostringstream os;
        os << "gamma_fn: Gamma(" << x << ") overflows double";
        throw std::overflow_error(os.str());
    }
    return std::tgamma(x);
}

long double rgamma(long double x) {
    if (is_nonpositive_integer(x)) {
        return 0.0L;
    }
    if (x > 1700.0L) {
        return std::exp(-std::lgamma(x));
    }
    if (x < 0.5L) {
        // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi.
        return sin_pi(x) * std::tgamma(1.0L - x) / kPiLd;
    }
    return 1.0L / std::tgamma(x);
}

// ---------------------------------------------------------------------------
// Mittag-Leffler

MittagLeffler::MittagLeffler(double alpha, double beta, PrecisionPolicy policy)
    : alpha_(alpha), beta_(beta), policy_(policy) {
    policy_.validate();
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw ParameterError("MittagLeffler: alpha and beta must be positive and finite");
    }
    taylor_.resize(static_cast<std::size_t>(policy_.max_series_terms));
    for (std::size_t k = 0; k < taylor_.size(); ++k) {
        taylor_[k] = rgamma(static_cast<ld>(alpha) * static_cast<ld>(k) + beta);
    }
    asym_.resize(kAsymptoticTerms);
    asym_env_.resize(kAsymptoticTerms);
    for (int k = 1; k <= kAsymptoticTerms; ++k) {
        const ld arg = static_cast<ld>(beta) - static_cast<ld>(alpha) * static_cast<ld>(k);
        asym_[static_cast<std::size_t>(k - 1)] = rgamma(arg);
        asym_env_[static_cast<std::size_t>(k - 1)] =
            is_nonpositive_integer(arg) ? 0.0L
            : arg < 0.5L                ? std::tgamma(1.0L - arg) / kPiLd
                                        : std::fabs(rgamma(arg));
    }
}

MittagLeffler::Attempt MittagLeffler::series(double z) const {
    Attempt out;
    const ld zl = z;
    CompensatedSum acc;
    ld power = 1.0L;
    ld max_term = 0.0L;
    ld prev = std::numeric_limits<ld>::infinity();
    const ld floor = static_cast<ld>(policy_.target_abs_tol) * 1e-6L;
    for (std::size_t k = 0; k < taylor_.size(); ++k) {
        const ld term = power * taylor_[k];
        if (!std::isfinite(term)) {
            break;
        }
        acc.add(term);
        const ld mag = std::fabs(term);
        max_term = std::max(max_term, mag);
        if (k > 0 && mag <= prev) {
            const ld scale = std::max(std::fabs(acc.value()), floor);
            if (mag <= kEpsLd * scale) {
                out.converged = true;
                out.value = acc.value();
                out.error = 8.0L * kEpsLd * max_term + mag;
                return out;
            }
        }
        prev = mag;
        power *= zl;
    }
    out.value = acc.value();
    out.error = std::numeric_limits<ld>::infinity();
    return out;
}

MittagLeffler::Attempt MittagLeffler::asymptotic(double z) const {
    Attempt out;
    const ld zl = z;
    const ld a = alpha_;
    const ld b = beta_;
    const ld x = std::pow(std::fabs(zl), 1.0L / a);

    // Residues at the poles of s^{a-b}/(s^a - z) on the principal sheet.
    ld residues = 0.0L;
    ld omitted = 0.0L;
    if (z > 0.0) {
        residues = std::pow(x, 1.0L - b) * std::exp(x) / a;
    } else if (a > 1.0L) {
        const cld pole = std::polar(x, kPiLd / a);
        residues = 2.0L / a * std::real(std::pow(pole, 1.0L - b) * std::exp(pole));
    } else if (a == 1.0L) {
        // The residue at s = z is exponentially small on the negative axis.
        omitted = std::pow(x, 1.0L - b) * std::exp(-x);
    }

    // Coefficients 1/Gamma(b - a k) pass near zero where b - a k is close to
    // an integer, so truncation is decided on the envelope
    // |1/Gamma(x)| <= Gamma(1 - x)/pi (x < 1/2) rather than on single terms.
    CompensatedSum acc;
    const ld inv_mag = 1.0L / std::fabs(zl);
    const ld inv = 1.0L / zl;
    ld power = inv;
    ld power_mag = inv_mag;
    ld prev_env = std::numeric_limits<ld>::infinity();
    ld omitted_env = std::numeric_limits<ld>::infinity();
    for (std::size_t k = 0; k < asym_.size(); ++k) {
        const ld env = power_mag * asym_env_[k];
        if (env > prev_env) {
            omitted_env = env;
            break;
        }
        acc.add(-power * asym_[k]);
        if (env == 0.0L) {
            power *= inv;
            power_mag *= inv_mag;
            continue;
        }
        prev_env = env;
        if (env <= kEpsLd * std::fabs(acc.value())) {
            omitted_env = env;
            break;
        }
        power *= inv;
        power_mag *= inv_mag;
    }
    const ld last = omitted_env;
    out.value = residues + acc.value();
    out.error = last + omitted + 8.0L * kEpsLd * std::fabs(out.value);
    out.converged = std::isfinite(out.value);
    return out;
}

MittagLeffler::Attempt MittagLeffler::contour(double z) const {
    // Bromwich inversion at t = 1 of s^{a-b}/(s^a - z) on the hyperbola
    // s(theta) = mu (1 + sin(i theta - phi)); parameters follow the optimal
    // choice for transforms singular only on the negative real axis.
    Attempt out;
    const ld a = alpha_;
    const ld b = beta_;
    const ld zl = z;
    constexpr int n = kContourNodes;
    const ld phi = 1.1721L;
    const ld h = 1.0818L / n;
    const ld mu = 4.4921L * n;
    const ld sphi = std::sin(phi);
    const ld cphi = std::cos(phi);

    CompensatedSum acc;
    ld abs_sum = 0.0L;
    for (int k = 0; k <= n; ++k) {
        const ld theta = h * k;
        const ld ch = std::cosh(theta);
        const ld sh = std::sinh(theta);
        const cld s(mu * (1.0L - ch * sphi), mu * sh * cphi);
        const cld ds(-mu * sh * sphi, mu * ch * cphi);
        const cld logs = std::log(s);
        const cld sa = std::exp(a * logs);
        const cld f = std::exp(s + (a - b) * logs) / (sa - zl) * ds;
        const ld w = (k == 0 ? 1.0L : 2.0L) * std::imag(f);
        acc.add(w);
        abs_sum += std::fabs(w);
    }
    const ld scale = h / (2.0L * kPiLd);
    out.value = scale * acc.value();
    out.error = 16.0L * kEpsLd * scale * abs_sum;
    out.converged = std::isfinite(out.value);
    return out;
}

double MittagLeffler::operator()(double z) const {
    if (std::isnan(z)) {
        throw ParameterError("mittag_leffler: NaN argument");
    }
    if (z == 0.0) {
        return static_cast<double>(taylor_[0]);
    }
    // Closed forms for the classical case; the contour only reaches an
    // absolute tolerance, which loses positivity once e^z < 1e-16.
    if (alpha_ == 1.0 && beta_ == 1.0) return std::exp(z);
    if (alpha_ == 1.0 && beta_ == 2.0) return std::expm1(z) / z;
    const double tol = policy_.target_abs_tol;
    const double x = std::pow(std::fabs(z), 1.0 / alpha_);

    auto accept = [&](const Attempt& at) {
        return at.converged && at.error <= tol * std::max<ld>(1.0L, std::fabs(at.value));
    };
    auto finish = [&](const Attempt& at) {
        const ld v = at.value;
        if (std::fabs(v) > std::numeric_limits<double>::max()) {
            throw std::overflow_error(describe(alpha_, beta_, z) + " overflows double");
        }
        return static_cast<double>(v);
    };

    if (z > 0.0) {
        // The exponential residue dominates the algebraic tail by exp(2X).
        if (alpha_ < 2.0 && x > 720.0) {
            throw std::overflow_error(describe(alpha_, beta_, z) + " overflows double");
        }
        if (alpha_ < 2.0 && x >= kAsymptoticMinPositiveX) {
            const Attempt as = asymptotic(z);
            if (accept(as)) return finish(as);
        }
        const Attempt s = series(z);
        if (accept(s)) return finish(s);
        throw AccuracyError(describe(alpha_, beta_, z) + ": series did not converge");
    }

    if (x <= kSeriesMaxX) {
        const Attempt s = series(z);
        if (accept(s)) return finish(s);
    }
    if (alpha_ < 2.0 && x >= kAsymptoticMinX) {
        const Attempt as = asymptotic(z);
        if (accept(as)) return finish(as);
    }
    if (alpha_ <= 1.0) {
        const Attempt c = contour(z);
        if (accept(c)) return finish(c);
    }
    throw AccuracyError(describe(alpha_, beta_, z) + ": no representation reached tolerance");
}

double mittag_leffler(double alpha, double beta, double z, PrecisionPolicy policy) {
    // Building the coefficient tables dominates a single evaluation, and
    // callers tend to sweep z with fixed parameters.
    thread_local std::optional<MittagLeffler> last;
    thread_local double last_a = 0, last_b = 0, last_tol = 0;
    thread_local int last_terms = 0;
    if (!last || last_a != alpha || last_b != beta || last_tol != policy.target_abs_tol ||
        last_terms != policy.max_series_terms) {
        last.reset();
        last.emplace(alpha, beta, policy);
        last_a = alpha;
        last_b = beta;
        last_tol = policy.target_abs_tol;
        last_terms = policy.max_series_terms;
    }
    return (*last)(z);
}

// ---------------------------------------------------------------------------
// Wright function

namespace {

struct WrightAttempt {
    double value = 0.0;
    double error = std::numeric_limits<double>::infinity();
};

WrightAttempt wright_series(double rho, double tau, const PrecisionPolicy& policy) {
    CompensatedSum acc;
    ld factor = 1.0L;  // (-tau)^n / n!
    ld max_term = 0.0L;
    const ld floor = static_cast<ld>(policy.target_abs_tol) * 1e-6L;
    for (int n = 0; n < policy.max_series_terms; ++n) {
        if (n > 0) {
            factor *= -static_cast<ld>(tau) / n;
        }
        const ld term = factor * rgamma(1.0L - rho - static_cast<ld>(rho) * n);
        acc.add(term);
        max_term = std::max(max_term, std::fabs(term));
        // 1/Gamma vanishes at isolated n, so test the envelope
        // |1/Gamma(1 - rho - rho n)| <= Gamma(rho (n + 1)) / pi instead of the term.
        const ld envelope = std::fabs(factor) * std::tgamma(static_cast<ld>(rho) * (n + 1)) / kPiLd;
        const ld scale = std::max(std::fabs(acc.value()), floor);
        if (n > 0 && envelope <= kEpsLd * scale) {
            return {static_cast<double>(acc.value()),
                    static_cast<double>(8.0L * kEpsLd * max_term + envelope)};
        }
    }
    return {static_cast<double>(acc.value()), std::numeric_limits<double>::infinity()};
}

// M-Wright function from Kanter's integral for the one-sided stable law:
// Phi(tau) = tau^{r/(1-r)} / (pi (1-r)) * int_0^pi A(p) exp(-tau^{1/(1-r)} A(p)) dp
// with A(p) = (sin(r p)/sin p)^{1/(1-r)} sin((1-r) p) / sin(r p).
WrightAttempt wright_kanter(double rho, double tau, const PrecisionPolicy& policy) {
    const double expo = 1.0 / (1.0 - rho);
    const double c = std::pow(tau, expo);
    auto integrand = [&](double p) {
        const double log_a = expo * (std::log(std::sin(rho * p)) - std::log(std::sin(p))) +
                             std::log(std::sin((1.0 - rho) * p)) - std::log(std::sin(rho * p));
        const double a = std::exp(log_a);
        if (!std::isfinite(a)) return 0.0;
        return std::exp(log_a - c * a);
    };
    // Double-exponential rule: the integrand is smooth inside (0, pi) but its
    // derivatives blow up at the right end.
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    double err = 0.0;
    double l1 = 0.0;
    const double integral = rule.integrate(integrand, 0.0, std::numbers::pi,
                                           1e-3 * policy.target_abs_tol, &err, &l1);
    const double pref = std::pow(tau, rho * expo) / (std::numbers::pi * (1.0 - rho));
    return {pref * integral, pref * (err + 4.0 * std::numeric_limits<double>::epsilon() * l1)};
}

}  // namespace

double wright_phi(double rho, double tau, PrecisionPolicy policy) {
    policy.validate();
    if (!(rho > 0.0 && rho < 1.0)) {
        throw ParameterError("wright_phi: rho must lie in (0, 1)");
    }
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw ParameterError("wright_phi: tau must be finite and nonnegative");
    }
    const double tol = policy.target_abs_tol;
    if (tau <= 3.0) {
        const WrightAttempt s = wright_series(rho, tau, policy);
        if (s.error <= tol) return s.value;
    }
    const WrightAttempt k = wright_kanter(rho, tau, policy);
    if (k.error <= tol) return k.value;
    std::ostringstream os;
    os << "wright_phi(" << rho << ", " << tau << "): accuracy not reached (estimate "
       << k.error << ")";
    throw AccuracyError(os.str());
}

// ---------------------------------------------------------------------------
// Propagators

double ml_kernel(double rho, double mu_sig, double d, double s) {
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw ParameterError("ml_kernel: rho must lie in (0, 1]");
    }
    if (!(mu_sig >= 0.0) || !(d > 0.0) || !(s > 0.0)) {
        throw ParameterError("ml_kernel: require mu_sig >= 0, d > 0, s > 0");
    }
    if (rho == 1.0) {
        return std::exp(-d * mu_sig * s);
    }
    return std::pow(s, rho - 1.0) * mittag_leffler(rho, rho, -d * mu_sig * std::pow(s, rho));
}

FractionalPropagator::FractionalPropagator(double rho, PrecisionPolicy policy)
    : rho_(rho),
      relax_(rho > 0.0 ? rho : 1.0, 1.0, policy),
      kern_(rho > 0.0 ? rho : 1.0, rho > 0.0 ? rho : 1.0, policy),
      integ_(rho > 0.0 ? rho : 1.0, rho > 0.0 ? rho + 1.0 : 2.0, policy) {
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw ParameterError("FractionalPropagator: rho must lie in (0, 1]");
    }
}

double FractionalPropagator::relaxation(double lambda, double t) const {
    if (t == 0.0) return 1.0;
    if (rho_ == 1.0) return std::exp(-lambda * t);
    return relax_(-lambda * std::pow(t, rho_));
}

double FractionalPropagator::kernel(double lambda, double t) const {
    if (rho_ == 1.0) return std::exp(-lambda * t);
    return std::pow(t, rho_ - 1.0) * kern_(-lambda * std::pow(t, rho_));
}

double FractionalPropagator::kernel_integral(double lambda, double t) const {
    if (t == 0.0) return 0.0;
    if (rho_ == 1.0) {
        return lambda == 0.0 ? t : -std::expm1(-lambda * t) / lambda;
    }
    const double tr = std::pow(t, rho_);
    return tr * integ_(-lambda * tr);
}

}  // namespace fracrd::specfun
