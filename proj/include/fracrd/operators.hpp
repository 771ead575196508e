#pragma once

// Fractional Laplacians on an interval (0, L).
//
// The spectral operator acts diagonally on the eigenbasis of the Dirichlet or
// Neumann Laplacian. Nodal values live on the grid where the discrete sine
// (DST-I) or cosine (DCT-II) transform is an exact inverse pair:
//   Dirichlet: x_j = j L / (n + 1), j = 1..n  (endpoints pinned to zero)
//   Neumann:   x_j = (j + 1/2) L / n, j = 0..n-1
// and the grid quadrature is h * sum_j f(x_j) in both cases.

#include <functional>
#include <vector>

namespace fracrd {

enum class Boundary { dirichlet, neumann };

// Where the exterior condition is imposed: on the boundary points (spectral
// form) or on the complement of the interval (Riesz form).
enum class Exterior { boundary, complement };

struct Domain1D {
    double length = 1.0;
    int n_modes = 256;
    Boundary boundary = Boundary::dirichlet;
    Exterior exterior = Exterior::boundary;

    void validate() const;

    /// 1 for Dirichlet, 0 for Neumann.
    int lambda() const { return boundary == Boundary::dirichlet ? 1 : 0; }
    double spacing() const;
    double node(int j) const;
    std::vector<double> nodes() const;

    /// Wavenumber k of spectral slot i (k = i + 1 for Dirichlet, k = i for Neumann).
    int wavenumber(int i) const { return boundary == Boundary::dirichlet ? i + 1 : i; }
    /// mu_k = (k pi / L)^2 for slot i.
    double eigenvalue(int i) const;
    /// L^2-normalized eigenfunction of slot i evaluated at x.
    double eigenfunction(int i, double x) const;

    bool operator==(const Domain1D&) const = default;
};

struct Eigenpair {
    int k = 0;
    double mu = 0.0;
    std::vector<double> samples;  // e_k at the grid nodes
};

std::vector<Eigenpair> eigenpairs(const Domain1D& dom);

/// Coefficients w_i = int u e_i dx, by fast transform.
std::vector<double> analyze(const Domain1D& dom, const std::vector<double>& nodal);
/// Nodal values sum_i w_i e_i(x_j).
std::vector<double> synthesize(const Domain1D& dom, const std::vector<double>& coeffs);

/// Concentration profile with nodal and spectral representations. Whichever
/// one is stale is recomputed lazily on access.
class Field {
public:
    explicit Field(Domain1D dom);

    static Field from_nodal(Domain1D dom, std::vector<double> values);
    static Field from_spectral(Domain1D dom, std::vector<double> coeffs);
    static Field sample(Domain1D dom, const std::function<double(double)>& f);

    const Domain1D& domain() const { return dom_; }
    int size() const { return dom_.n_modes; }

    const std::vector<double>& nodal() const;
    const std::vector<double>& spectral() const;
    /// Mutable access; invalidates the other representation.
    std::vector<double>& nodal_mut();
    std::vector<double>& spectral_mut();

    bool nodal_current() const { return nodal_ok_; }
    bool spectral_current() const { return spectral_ok_; }

    double integral() const;
    double inner(const Field& other) const;
    double l2_norm() const;
    double sup_norm() const;
    double min() const;

private:
    Domain1D dom_;
    mutable std::vector<double> nodal_;
    mutable std::vector<double> spectral_;
    mutable bool nodal_ok_ = true;
    mutable bool spectral_ok_ = true;
};

/// d (-Delta)^sigma with multipliers mu_i^sigma.
class SpectralOperator {
public:
    SpectralOperator(const Domain1D& dom, double sigma, double d = 1.0);

    const Domain1D& domain() const { return dom_; }
    double sigma() const { return sigma_; }
    double diffusion() const { return d_; }
    const std::vector<double>& multipliers() const { return mult_; }

    Field apply(const Field& f) const;

private:
    Domain1D dom_;
    double sigma_;
    double d_;
    std::vector<double> mult_;
};

Field apply_spectral_flaplacian(const Field& f, const SpectralOperator& op);

/// sum_i mu_i^sigma w_i^2, the squared H^sigma seminorm.
double sobolev_seminorm(const Field& f, double sigma);

/// Fractional centered-difference weights g_0..g_{count-1} of order 2 sigma,
/// g_k = (-1)^k Gamma(2 sigma + 1) / (Gamma(sigma - k + 1) Gamma(sigma + k + 1)).
std::vector<double> riesz_weights(double sigma, int count);

/// Riesz fractional Laplacian by fractional centered differences with the
/// field extended by zero outside the interval. Dirichlet domains only.
Field apply_riesz_flaplacian(const Field& f, double sigma);

}  // namespace fracrd
