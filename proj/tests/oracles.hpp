#pragma once

// Independent reference computations used only by the test suites. Nothing
// here shares code with the library's evaluation paths.

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

inline mp pi_mp() { return boost::math::constants::pi<mp>(); }

inline mp rgamma_mp(const mp& x) {
    if (x <= 0 && x == floor(x)) return mp(0);
    if (x < 0.5) {
        // Reflection keeps the multiprecision gamma on positive arguments.
        return sin(pi_mp() * x) * boost::math::tgamma(mp(1) - x) / pi_mp();
    }
    return mp(1) / boost::math::tgamma(x);
}

/// Taylor series of E_{a,b}(z) in 50-digit arithmetic. Trustworthy while
/// exp(|z|^{1/a}) stays well below 1e40.
inline double mittag_leffler_series(double a, double b, double z, int max_terms = 4000) {
    mp sum = 0;
    mp power = 1;
    const mp zz = z;
    mp prev_mag = 1e300;
    for (int k = 0; k < max_terms; ++k) {
        const mp term = power * rgamma_mp(mp(a) * k + mp(b));
        sum += term;
        const mp mag = abs(term);
        if (k > 5 && mag < prev_mag && mag < mp("1e-45") * (abs(sum) + mp("1e-30"))) break;
        prev_mag = mag;
        power *= zz;
    }
    return static_cast<double>(sum);
}

/// e^{x^2} erfc(x) = E_{1/2,1}(-x).
inline double scaled_erfc(double x) {
    const mp xx = x;
    return static_cast<double>(exp(xx * xx) * boost::math::erfc(xx));
}

/// Wright series sum (-tau)^n / (n! Gamma(1 - rho - rho n)) in 50 digits.
inline double wright_series(double rho, double tau, int terms = 400) {
    mp sum = 0;
    mp factor = 1;
    for (int n = 0; n < terms; ++n) {
        if (n > 0) factor *= -mp(tau) / n;
        sum += factor * rgamma_mp(mp(1) - mp(rho) - mp(rho) * n);
    }
    return static_cast<double>(sum);
}

/// Composite Gauss-Legendre (10 points per panel) on [a, b].
inline double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                             int panels) {
    static const double x[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                0.8650633666889845, 0.9739065285171717};
    static const double w[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                0.1494513491505806, 0.0666713443086881};
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        const double r = 0.5 * h;
        for (int i = 0; i < 5; ++i) {
            total += w[i] * r * (f(c - r * x[i]) + f(c + r * x[i]));
        }
    }
    return total;
}

/// Caputo derivative of t^k, Gamma(k+1)/Gamma(k+1-rho) t^{k-rho}.
inline double caputo_monomial(double k, double rho, double t) {
    return std::tgamma(k + 1.0) / std::tgamma(k + 1.0 - rho) * std::pow(t, k - rho);
}

/// Volterra equation psi = psi0 + C/Gamma(a) int (t-s)^{a-1} psi ds solved
/// by the implicit product-trapezoidal rule (independent of the library's
/// rectangle rule).
inline std::vector<double> volterra_trapezoid(double a, double c, double psi0, double T, int n) {
    const double h = T / n;
    std::vector<double> psi(static_cast<std::size_t>(n) + 1, psi0);
    const double g = c * std::pow(h, a) / std::tgamma(a + 2.0);
    auto weight = [&](int m, int j) {
        // Product trapezoid weights (Diethelm).
        if (j == 0) {
            return std::pow(m - 1.0, a + 1.0) - (m - 1.0 - a) * std::pow(static_cast<double>(m), a);
        }
        if (j == m) return 1.0;
        return std::pow(m - j + 1.0, a + 1.0) + std::pow(m - j - 1.0, a + 1.0) -
               2.0 * std::pow(static_cast<double>(m - j), a + 1.0);
    };
    for (int m = 1; m <= n; ++m) {
        double rhs = psi0;
        for (int j = 0; j < m; ++j) rhs += g * weight(m, j) * psi[static_cast<std::size_t>(j)];
        psi[static_cast<std::size_t>(m)] = rhs / (1.0 - g * weight(m, m));
    }
    return psi;
}

}  // namespace oracle
