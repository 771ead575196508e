#include "fracrd/operators.hpp"

#include "fracrd/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

namespace fracrd {

namespace {

// FFTW plans are created once per (kind, size) and executed through the
// new-array interface, which is safe to call concurrently.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(fftw_r2r_kind kind, int n) {
        std::lock_guard lock(mu_);
        const auto key = std::make_pair(static_cast<int>(kind), n);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<double> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
        fftw_plan p = fftw_plan_r2r_1d(n, in.data(), out.data(), kind,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (p == nullptr) throw std::runtime_error("fftw: plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plans() {
    static PlanCache cache;
    return cache;
}

void run(fftw_r2r_kind kind, std::vector<double>& in, std::vector<double>& out) {
    const int n = static_cast<int>(in.size());
    fftw_execute_r2r(plans().get(kind, n), in.data(), out.data());
}

void check_size(const Domain1D& dom, std::size_t n, const char* what) {
    if (n != static_cast<std::size_t>(dom.n_modes)) {
        throw ParameterError(std::string(what) + ": expected " + std::to_string(dom.n_modes) +
                             " values, got " + std::to_string(n));
    }
}

}  // namespace

void Domain1D::validate() const {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ParameterError("domain: length must be positive");
    }
    if (n_modes < 4) throw ParameterError("domain: n_modes must be at least 4");
}

double Domain1D::spacing() const {
    return boundary == Boundary::dirichlet ? length / (n_modes + 1) : length / n_modes;
}

double Domain1D::node(int j) const {
    const double h = spacing();
    return boundary == Boundary::dirichlet ? (j + 1) * h : (j + 0.5) * h;
}

std::vector<double> Domain1D::nodes() const {
    std::vector<double> x(static_cast<std::size_t>(n_modes));
    for (int j = 0; j < n_modes; ++j) x[static_cast<std::size_t>(j)] = node(j);
    return x;
}

double Domain1D::eigenvalue(int i) const {
    const double k = wavenumber(i) * std::numbers::pi / length;
    return k * k;
}

double Domain1D::eigenfunction(int i, double x) const {
    const int k = wavenumber(i);
    const double arg = k * std::numbers::pi * x / length;
    if (boundary == Boundary::dirichlet) return std::sqrt(2.0 / length) * std::sin(arg);
    if (k == 0) return std::sqrt(1.0 / length);
    return std::sqrt(2.0 / length) * std::cos(arg);
}

std::vector<Eigenpair> eigenpairs(const Domain1D& dom) {
    dom.validate();
    std::vector<Eigenpair> out;
    out.reserve(static_cast<std::size_t>(dom.n_modes));
    const auto x = dom.nodes();
    for (int i = 0; i < dom.n_modes; ++i) {
        Eigenpair e;
        e.k = dom.wavenumber(i);
        e.mu = dom.eigenvalue(i);
        e.samples.resize(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) e.samples[j] = dom.eigenfunction(i, x[j]);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<double> analyze(const Domain1D& dom, const std::vector<double>& nodal) {
    check_size(dom, nodal.size(), "analyze");
    std::vector<double> in = nodal;
    std::vector<double> out(nodal.size());
    const double h = dom.spacing();
    const double c = std::sqrt(2.0 / dom.length);
    if (dom.boundary == Boundary::dirichlet) {
        run(FFTW_RODFT00, in, out);
        for (double& w : out) w *= 0.5 * h * c;
    } else {
        run(FFTW_REDFT10, in, out);
        out[0] *= 0.5 * h / std::sqrt(dom.length);
        for (std::size_t k = 1; k < out.size(); ++k) out[k] *= 0.5 * h * c;
    }
    return out;
}

std::vector<double> synthesize(const Domain1D& dom, const std::vector<double>& coeffs) {
    check_size(dom, coeffs.size(), "synthesize");
    std::vector<double> in = coeffs;
    std::vector<double> out(coeffs.size());
    const double c = std::sqrt(2.0 / dom.length);
    if (dom.boundary == Boundary::dirichlet) {
        for (double& w : in) w *= 0.5 * c;
        run(FFTW_RODFT00, in, out);
    } else {
        in[0] /= std::sqrt(dom.length);
        for (std::size_t k = 1; k < in.size(); ++k) in[k] *= 0.5 * c;
        run(FFTW_REDFT01, in, out);
    }
    return out;
}

// ---------------------------------------------------------------------------

Field::Field(Domain1D dom)
    : dom_(dom),
      nodal_(static_cast<std::size_t>(std::max(dom.n_modes, 0)), 0.0),
      spectral_(nodal_.size(), 0.0) {
    dom_.validate();
}

Field Field::from_nodal(Domain1D dom, std::vector<double> values) {
    Field f(dom);
    check_size(dom, values.size(), "Field::from_nodal");
    f.nodal_ = std::move(values);
    f.spectral_ok_ = false;
    return f;
}

Field Field::from_spectral(Domain1D dom, std::vector<double> coeffs) {
    Field f(dom);
    check_size(dom, coeffs.size(), "Field::from_spectral");
    f.spectral_ = std::move(coeffs);
    f.nodal_ok_ = false;
    return f;
}

Field Field::sample(Domain1D dom, const std::function<double(double)>& fn) {
    dom.validate();
    std::vector<double> v(static_cast<std::size_t>(dom.n_modes));
    for (int j = 0; j < dom.n_modes; ++j) v[static_cast<std::size_t>(j)] = fn(dom.node(j));
    return from_nodal(dom, std::move(v));
}

const std::vector<double>& Field::nodal() const {
    if (!nodal_ok_) {
        nodal_ = synthesize(dom_, spectral_);
        nodal_ok_ = true;
    }
    return nodal_;
}

const std::vector<double>& Field::spectral() const {
    if (!spectral_ok_) {
        spectral_ = analyze(dom_, nodal_);
        spectral_ok_ = true;
    }
    return spectral_;
}

std::vector<double>& Field::nodal_mut() {
    nodal();
    spectral_ok_ = false;
    return nodal_;
}

std::vector<double>& Field::spectral_mut() {
    spectral();
    nodal_ok_ = false;
    return spectral_;
}

double Field::integral() const {
    double s = 0.0;
    for (double x : nodal()) s += x;
    return s * dom_.spacing();
}

double Field::inner(const Field& other) const {
    if (!(other.dom_ == dom_)) throw ParameterError("Field::inner: domains differ");
    const auto& a = nodal();
    const auto& b = other.nodal();
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s * dom_.spacing();
}

double Field::l2_norm() const { return std::sqrt(inner(*this)); }

double Field::sup_norm() const {
    double m = 0.0;
    for (double x : nodal()) m = std::max(m, std::fabs(x));
    return m;
}

double Field::min() const {
    const auto& v = nodal();
    return *std::min_element(v.begin(), v.end());
}

// ---------------------------------------------------------------------------

SpectralOperator::SpectralOperator(const Domain1D& dom, double sigma, double d)
    : dom_(dom), sigma_(sigma), d_(d) {
    dom_.validate();
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw ParameterError("SpectralOperator: sigma must lie in (0, 1)");
    }
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw ParameterError("SpectralOperator: diffusion coefficient must be positive");
    }
    mult_.resize(static_cast<std::size_t>(dom_.n_modes));
    for (int i = 0; i < dom_.n_modes; ++i) {
        const double mu = dom_.eigenvalue(i);
        mult_[static_cast<std::size_t>(i)] = mu == 0.0 ? 0.0 : std::pow(mu, sigma_);
    }
}

Field SpectralOperator::apply(const Field& f) const {
    if (!(f.domain() == dom_)) throw ParameterError("SpectralOperator: field domain differs");
    std::vector<double> w = f.spectral();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= d_ * mult_[i];
    return Field::from_spectral(dom_, std::move(w));
}

Field apply_spectral_flaplacian(const Field& f, const SpectralOperator& op) { return op.apply(f); }

double sobolev_seminorm(const Field& f, double sigma) {
    if (!(sigma > 0.0 && sigma <= 1.0)) {
        throw ParameterError("sobolev_seminorm: sigma must lie in (0, 1]");
    }
    const auto& w = f.spectral();
    const Domain1D& dom = f.domain();
    double s = 0.0;
    for (int i = 0; i < dom.n_modes; ++i) {
        const double mu = dom.eigenvalue(i);
        if (mu == 0.0) continue;
        const double c = w[static_cast<std::size_t>(i)];
        s += std::pow(mu, sigma) * c * c;
    }
    return s;
}

std::vector<double> riesz_weights(double sigma, int count) {
    if (!(sigma > 0.0 && sigma <= 1.0)) {
        throw ParameterError("riesz_weights: sigma must lie in (0, 1]");
    }
    std::vector<double> g(static_cast<std::size_t>(std::max(count, 0)));
    if (g.empty()) return g;
    g[0] = std::tgamma(2.0 * sigma + 1.0) / std::pow(std::tgamma(sigma + 1.0), 2);
    for (std::size_t k = 0; k + 1 < g.size(); ++k) {
        const double kk = static_cast<double>(k);
        g[k + 1] = g[k] * (kk - sigma) / (kk + sigma + 1.0);
    }
    return g;
}

Field apply_riesz_flaplacian(const Field& f, double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw ParameterError("apply_riesz_flaplacian: sigma must lie in (0, 1)");
    }
    const Domain1D& dom = f.domain();
    if (dom.boundary != Boundary::dirichlet) {
        throw ParameterError("apply_riesz_flaplacian: requires a Dirichlet (zero exterior) domain");
    }
    const int n = dom.n_modes;
    const auto g = riesz_weights(sigma, n);
    const auto& u = f.nodal();
    const double scale = std::pow(dom.spacing(), -2.0 * sigma);
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            s += g[static_cast<std::size_t>(std::abs(i - j))] * u[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = scale * s;
    }
    return Field::from_nodal(dom, std::move(out));
}

}  // namespace fracrd
