#pragma once

// Special functions for time-fractional dynamics: Gamma, the two-parameter
// Mittag-Leffler function and the Wright function of M-type.
//
// Everything here is restricted to real arguments.

#include <vector>

namespace fracrd::specfun {

struct PrecisionPolicy {
    double target_abs_tol = 1e-13;
    int max_series_terms = 500;

    void validate() const;
};

/// Gamma(x). Throws PoleError at nonpositive integers and std::overflow_error
/// when the result is not representable as a double.
double gamma_fn(double x);

/// 1/Gamma(x), which is entire: returns 0 at the poles of Gamma.
long double rgamma(long double x);

/// Evaluator for E_{alpha,beta}(z) with the coefficient tables cached.
///
/// Representation used per argument, X = |z|^{1/alpha}:
///   - z >= 0 or small X: Taylor series in long double with Neumaier
///     summation and a cancellation error estimate;
///   - z < 0, X >= 40, alpha < 2: asymptotic expansion
///     -sum_k z^{-k}/Gamma(beta - alpha k) (plus the pole residues when
///     1 < alpha < 2), truncated at its smallest term;
///   - z < 0 in between, alpha <= 1: inverse Laplace transform of
///     s^{alpha-beta}/(s^alpha - z) along a hyperbolic contour, trapezoidal
///     rule in long double.
/// Throws AccuracyError when none of these reaches the policy tolerance.
class MittagLeffler {
public:
    MittagLeffler(double alpha, double beta, PrecisionPolicy policy = {});

    double operator()(double z) const;

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    struct Attempt {
        long double value = 0.0L;
        long double error = 0.0L;
        bool converged = false;
    };
    // Exposed for diagnostics and tests of the individual representations.
    Attempt series(double z) const;
    Attempt asymptotic(double z) const;
    Attempt contour(double z) const;

private:
    double alpha_;
    double beta_;
    PrecisionPolicy policy_;
    std::vector<long double> taylor_;  // 1/Gamma(alpha k + beta)
    std::vector<long double> asym_;    // 1/Gamma(beta - alpha k), k >= 1
    std::vector<long double> asym_env_;
};

/// E_{alpha,beta}(z) for alpha, beta > 0 and real z.
double mittag_leffler(double alpha, double beta, double z, PrecisionPolicy policy = {});

/// Wright function of M-type, Phi_rho(tau) = sum (-tau)^n / (n! Gamma(1 - rho - rho n)),
/// for 0 < rho < 1 and tau >= 0.
///
/// Uses the power series while its cancellation estimate stays below the
/// tolerance and otherwise Kanter's representation of the one-sided stable
/// density, which has a positive integrand on (0, pi).
double wright_phi(double rho, double tau, PrecisionPolicy policy = {});

/// Mode-wise action of the fractional propagator,
/// s^{rho-1} E_{rho,rho}(-d mu_sig s^rho); exp(-d mu_sig s) for rho = 1.
double ml_kernel(double rho, double mu_sig, double d, double s);

/// Relaxation and memory functions for one fractional order, shared by every
/// spectral mode of a simulation.
class FractionalPropagator {
public:
    explicit FractionalPropagator(double rho, PrecisionPolicy policy = {});

    double rho() const { return rho_; }

    /// E_{rho,1}(-lambda t^rho): free decay of a mode with rate lambda.
    double relaxation(double lambda, double t) const;
    /// t^{rho-1} E_{rho,rho}(-lambda t^rho).
    double kernel(double lambda, double t) const;
    /// Integral of kernel(lambda, .) over [0, t], i.e. t^rho E_{rho,rho+1}(-lambda t^rho).
    double kernel_integral(double lambda, double t) const;

private:
    double rho_;
    MittagLeffler relax_;
    MittagLeffler kern_;
    MittagLeffler integ_;
};

}  // namespace fracrd::specfun
