#include "fracrd/stepper.hpp"

#include "fracrd/errors.hpp"
#include "fracrd/specfun.hpp"
#include "fracrd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace fracrd {

std::string to_string(Scheme s) { return s == Scheme::l1_imex ? "L1_IMEX" : "ML_MILD"; }

std::string to_string(Status s) {
    switch (s) {
        case Status::completed: return "completed";
        case Status::blowup_detected: return "blowup_detected";
        case Status::scheme_failure: return "scheme_failure";
    }
    return "scheme_failure";
}

void SolverConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("solver.dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ParameterError("solver.t_end must be positive");
    if (!(dt < t_end)) throw ParameterError("solver.dt must be smaller than solver.t_end");
    if (!(blowup_threshold > 0.0)) throw ParameterError("solver.blowup_threshold must be positive");
    if (!(growth_factor > 1.0)) throw ParameterError("solver.growth_factor must exceed 1");
    if (growth_window < 1) throw ParameterError("solver.growth_window must be >= 1");
    if (snapshot_stride < 0) throw ParameterError("solver.snapshot_stride must be >= 0");
    if (!(clamp_tol >= 0.0)) throw ParameterError("solver.clamp_tol must be >= 0");
    if (!(lyapunov_p > 1.0)) throw ParameterError("solver.lyapunov_p must exceed 1");
    steps();
}

int SolverConfig::steps() const {
    const double ratio = t_end / dt;
    const double n = std::round(ratio);
    if (std::fabs(ratio - n) > 1e-9 * std::max(1.0, ratio) || n < 1 || n > 1e8) {
        throw ParameterError("solver.dt must divide solver.t_end into a whole number of steps");
    }
    return static_cast<int>(n);
}

std::vector<double> caputo_l1_coeffs(double rho, double dt, int n) {
    if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("caputo_l1_coeffs: rho must lie in (0, 1]");
    if (!(dt > 0.0)) throw ParameterError("caputo_l1_coeffs: dt must be positive");
    if (n < 1) throw ParameterError("caputo_l1_coeffs: n must be positive");
    if (rho == 1.0) return {1.0 / dt};
    const double c = std::pow(dt, -rho) / std::tgamma(2.0 - rho);
    const double e = 1.0 - rho;
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        b[static_cast<std::size_t>(j)] = c * (std::pow(j + 1.0, e) - std::pow(static_cast<double>(j), e));
    }
    return b;
}

// ---------------------------------------------------------------------------

struct SpeciesCache {
    std::vector<double> lambda;  // d mu_i^sigma
    // Mild scheme: dphi[m][i] = K_i(m dt) - K_i((m-1) dt) with K the kernel integral.
    std::vector<std::vector<double>> dphi;
};

struct StepCache {
    Scheme scheme;
    double dt;
    DiffusionParams dp;
    std::vector<double> b;  // L1 weights, extended on demand
    std::unique_ptr<specfun::FractionalPropagator> prop;
    SpeciesCache su;
    SpeciesCache sv;
};

SolverState::SolverState(Field u0, Field v0)
    : u(std::move(u0)), v(std::move(v0)), min_before_clamp(std::numeric_limits<double>::infinity()) {
    if (!(u.domain() == v.domain())) throw ParameterError("SolverState: u and v domains differ");
    hist_u.initial = u.spectral();
    hist_v.initial = v.spectral();
}

namespace {

SpeciesCache species_cache(const Domain1D& dom, double d, double sigma) {
    SpectralOperator op(dom, sigma, d);
    SpeciesCache c;
    c.lambda = op.multipliers();
    for (double& l : c.lambda) l *= d;
    return c;
}

StepCache& ensure_cache(SolverState& s, const SolverConfig& cfg, const DiffusionParams& dp,
                        Scheme scheme) {
    if (s.cache) {
        const StepCache& c = *s.cache;
        const bool same = c.scheme == scheme && c.dt == cfg.dt && c.dp.d_u == dp.d_u &&
                          c.dp.d_v == dp.d_v && c.dp.sigma1 == dp.sigma1 &&
                          c.dp.sigma2 == dp.sigma2 && c.dp.rho == dp.rho;
        if (!same) {
            throw ParameterError("step: scheme, dt and diffusion parameters must stay fixed during a run");
        }
        return *s.cache;
    }
    cfg.validate();
    dp.validate();
    auto c = std::make_shared<StepCache>();
    c->scheme = scheme;
    c->dt = cfg.dt;
    c->dp = dp;
    c->su = species_cache(s.u.domain(), dp.d_u, dp.sigma1);
    c->sv = species_cache(s.v.domain(), dp.d_v, dp.sigma2);
    if (scheme == Scheme::ml_mild) {
        c->prop = std::make_unique<specfun::FractionalPropagator>(dp.rho);
    }
    s.cache = c;
    return *c;
}

bool reaction_active(const KineticParams& kp) {
    return kp.alpha1 != kp.alpha2 || kp.beta1 != kp.beta2;
}

// Spectral coefficients of f(u, v) and g(u, v) at the current (clamped) state.
void reaction_coeffs(const SolverState& s, const KineticParams& kp, double clamp_tol,
                     std::vector<double>& fu, std::vector<double>& fv) {
    const Domain1D& dom = s.u.domain();
    const auto n = static_cast<std::size_t>(dom.n_modes);
    if (!reaction_active(kp)) {
        fu.assign(n, 0.0);
        fv.assign(n, 0.0);
        return;
    }
    const auto& u = s.u.nodal();
    const auto& v = s.v.nodal();
    std::vector<double> f(n), g(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Rates r = reaction_rates(u[j], v[j], kp, clamp_tol);
        f[j] = r.f;
        g[j] = r.g;
    }
    fu = analyze(dom, f);
    fv = analyze(dom, g);
}

// Synthesizes, checks finiteness and clamps negative nodal values to zero.
void finalize(Field& f, double& min_seen, const char* name, int step) {
    const auto& x = f.nodal();
    double lo = std::numeric_limits<double>::infinity();
    for (double a : x) {
        if (!std::isfinite(a)) {
            std::ostringstream os;
            os << "non-finite value in " << name << " at step " << step;
            throw SchemeFailure(os.str());
        }
        lo = std::min(lo, a);
    }
    min_seen = std::min(min_seen, lo);
    if (lo < 0.0) {
        for (double& a : f.nodal_mut()) a = std::max(a, 0.0);
    }
}

void extend_l1_weights(StepCache& c, int count) {
    if (static_cast<int>(c.b.size()) >= count) return;
    const double rho = c.dp.rho;
    if (rho == 1.0) {
        c.b.assign(1, 1.0 / c.dt);
        return;
    }
    c.b = caputo_l1_coeffs(rho, c.dt, std::max(count, 2 * static_cast<int>(c.b.size())));
}

void l1_species(Field& field, SpeciesHistory& hist, const SpeciesCache& sc, const StepCache& c,
                const std::vector<double>& forcing, int n, std::uint64_t& ops, double& min_seen,
                const char* name) {
    const std::vector<double> w_old = field.spectral();
    const std::size_t m = w_old.size();
    const double b0 = c.b[0];
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = b0 * w_old[i] + forcing[i];
    if (c.dp.rho != 1.0) {
        for (int j = 1; j <= n; ++j) {
            const double bj = c.b[static_cast<std::size_t>(j)];
            const auto& inc = hist.terms[static_cast<std::size_t>(n - j)];
            for (std::size_t i = 0; i < m; ++i) rhs[i] -= bj * inc[i];
        }
        ops += static_cast<std::uint64_t>(n) * m;
    }
    for (std::size_t i = 0; i < m; ++i) rhs[i] /= b0 + sc.lambda[i];
    field = Field::from_spectral(field.domain(), std::move(rhs));
    finalize(field, min_seen, name, n + 1);
    const auto& w_new = field.spectral();
    std::vector<double> inc(m);
    for (std::size_t i = 0; i < m; ++i) inc[i] = w_new[i] - w_old[i];
    hist.terms.push_back(std::move(inc));
}

void extend_kernel_table(SpeciesCache& sc, const specfun::FractionalPropagator& prop, double dt,
                         int upto) {
    const std::size_t m = sc.lambda.size();
    if (sc.dphi.empty()) sc.dphi.emplace_back(m, 0.0);  // slot 0 unused
    while (static_cast<int>(sc.dphi.size()) <= upto) {
        const int k = static_cast<int>(sc.dphi.size());
        std::vector<double> d(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double hi = prop.kernel_integral(sc.lambda[i], k * dt);
            const double lo = k == 1 ? 0.0 : prop.kernel_integral(sc.lambda[i], (k - 1) * dt);
            d[i] = hi - lo;
        }
        sc.dphi.push_back(std::move(d));
    }
}

void mild_species(Field& field, SpeciesHistory& hist, SpeciesCache& sc, const StepCache& c,
                  std::vector<double> forcing, int n, std::uint64_t& ops, double& min_seen,
                  const char* name) {
    const int next = n + 1;
    const double t = next * c.dt;
    extend_kernel_table(sc, *c.prop, c.dt, next);
    hist.terms.push_back(std::move(forcing));
    const std::size_t m = sc.lambda.size();
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = c.prop->relaxation(sc.lambda[i], t) * hist.initial[i];
    for (int j = 0; j <= n; ++j) {
        const auto& fj = hist.terms[static_cast<std::size_t>(j)];
        const auto& dk = sc.dphi[static_cast<std::size_t>(next - j)];
        for (std::size_t i = 0; i < m; ++i) w[i] += fj[i] * dk[i];
    }
    ops += static_cast<std::uint64_t>(next) * m;
    field = Field::from_spectral(field.domain(), std::move(w));
    finalize(field, min_seen, name, next);
}

}  // namespace

void step_l1_imex(SolverState& s, const SolverConfig& cfg, const DiffusionParams& dp,
                  const KineticParams& kp) {
    StepCache& c = ensure_cache(s, cfg, dp, Scheme::l1_imex);
    extend_l1_weights(c, s.n + 1);
    std::vector<double> fu, fv;
    reaction_coeffs(s, kp, cfg.clamp_tol, fu, fv);
    std::uint64_t ops = 0;
    l1_species(s.u, s.hist_u, c.su, c, fu, s.n, ops, s.min_before_clamp, "u");
    l1_species(s.v, s.hist_v, c.sv, c, fv, s.n, ops, s.min_before_clamp, "v");
    s.last_step_ops = ops;
    s.history_ops += ops;
    ++s.n;
    s.t = s.n * cfg.dt;
}

void step_ml_mild(SolverState& s, const SolverConfig& cfg, const DiffusionParams& dp,
                  const KineticParams& kp) {
    StepCache& c = ensure_cache(s, cfg, dp, Scheme::ml_mild);
    std::vector<double> fu, fv;
    reaction_coeffs(s, kp, cfg.clamp_tol, fu, fv);
    std::uint64_t ops = 0;
    mild_species(s.u, s.hist_u, c.su, c, std::move(fu), s.n, ops, s.min_before_clamp, "u");
    mild_species(s.v, s.hist_v, c.sv, c, std::move(fv), s.n, ops, s.min_before_clamp, "v");
    s.last_step_ops = ops;
    s.history_ops += ops;
    ++s.n;
    s.t = s.n * cfg.dt;
}

// ---------------------------------------------------------------------------

DiagnosticRow diagnostics(double t, const Field& u, const Field& v,
                          const std::optional<LyapunovWeights>& w) {
    DiagnosticRow r;
    r.t = t;
    r.linf_u = u.sup_norm();
    r.linf_v = v.sup_norm();
    r.l2_u = u.l2_norm();
    r.l2_v = v.l2_norm();
    r.mass_u = u.integral();
    r.mass_v = v.integral();
    if (w) r.lyapunov = lyapunov_value(u, v, *w);
    return r;
}

namespace {

Field checked_initial(const Field& f, double clamp_tol, const char* name) {
    const auto& x = f.nodal();
    double hi = 0.0;
    for (double a : x) {
        if (!std::isfinite(a) || a < -clamp_tol) {
            throw ParameterError(std::string("initial.") + name + " must be finite and nonnegative");
        }
        hi = std::max(hi, a);
    }
    if (!(hi > 0.0)) throw ParameterError(std::string("initial.") + name + " is identically zero");
    std::vector<double> y = x;
    for (double& a : y) a = std::max(a, 0.0);
    return Field::from_nodal(f.domain(), std::move(y));
}

}  // namespace

Trajectory simulate(const Field& u0, const Field& v0, const DiffusionParams& dp,
                    const KineticParams& kp, const SolverConfig& cfg) {
    cfg.validate();
    dp.validate();
    kp.validate();
    SolverState state(checked_initial(u0, cfg.clamp_tol, "u"), checked_initial(v0, cfg.clamp_tol, "v"));

    Trajectory tr;
    tr.regime = classify_regime(kp, dp);
    if (tr.regime.tag == RegimeTag::I || tr.regime.tag == RegimeTag::II) {
        tr.weights = lyapunov_weights(tr.regime, cfg.lyapunov_p);
    }
    tr.Lambda = std::max(state.u.sup_norm(), state.v.sup_norm());
    tr.domain_measure = u0.domain().length;
    const int total = cfg.steps();

    auto record = [&](const SolverState& s) {
        tr.rows.push_back(diagnostics(s.t, s.u, s.v, tr.weights));
        if (cfg.snapshot_stride > 0 && s.n % cfg.snapshot_stride == 0) {
            tr.snapshots.push_back({s.t, s.u.nodal(), s.v.nodal()});
        }
    };
    record(state);

    std::deque<double> recent{tr.Lambda};  // sup norms of the last growth_window rows
    tr.status = Status::completed;
    tr.t_max_lower_bound = 0.0;
    try {
        while (state.n < total) {
            if (cfg.scheme == Scheme::l1_imex) {
                step_l1_imex(state, cfg, dp, kp);
            } else {
                step_ml_mild(state, cfg, dp, kp);
            }
            record(state);
            const double sup = std::max(tr.rows.back().linf_u, tr.rows.back().linf_v);
            if (sup > cfg.blowup_threshold) {
                tr.status = Status::blowup_detected;
                std::ostringstream os;
                os << "sup norm " << sup << " exceeded threshold " << cfg.blowup_threshold;
                tr.message = os.str();
                break;
            }
            if (static_cast<int>(recent.size()) == cfg.growth_window && sup > tr.Lambda &&
                sup >= cfg.growth_factor * recent.front()) {
                tr.status = Status::blowup_detected;
                std::ostringstream os;
                os << "sup norm grew from " << recent.front() << " to " << sup << " within "
                   << cfg.growth_window << " steps";
                tr.message = os.str();
                break;
            }
            tr.t_max_lower_bound = state.t;
            recent.push_back(sup);
            if (static_cast<int>(recent.size()) > cfg.growth_window) recent.pop_front();
        }
    } catch (const SchemeFailure& e) {
        tr.status = Status::scheme_failure;
        tr.message = e.what();
    }
    if (tr.status == Status::completed) tr.t_max_lower_bound = state.t;
    tr.min_before_clamp = std::min({u0.min(), v0.min(), state.min_before_clamp});
    tr.history_ops = state.history_ops;
    tr.steps_taken = state.n;
    return tr;
}

// ---------------------------------------------------------------------------

double LinearModeProblem::exact_coefficient(double t) const {
    const double lambda = d * (domain.eigenvalue(mode) == 0.0
                                   ? 0.0
                                   : std::pow(domain.eigenvalue(mode), sigma));
    if (t == 0.0) return amplitude;
    if (rho == 1.0) return amplitude * std::exp(-lambda * t);
    return amplitude * specfun::mittag_leffler(rho, 1.0, -lambda * std::pow(t, rho));
}

ConvergenceResult convergence_study(const LinearModeProblem& p, Scheme scheme,
                                    const std::vector<double>& dts) {
    if (dts.size() < 3) throw ParameterError("convergence_study: need at least three dt values");
    for (std::size_t k = 1; k < dts.size(); ++k) {
        if (std::fabs(dts[k] - 0.5 * dts[k - 1]) > 1e-12 * dts[k - 1]) {
            throw ParameterError("convergence_study: each dt must halve the previous one");
        }
    }
    p.domain.validate();
    if (p.mode < 0 || p.mode >= p.domain.n_modes) throw ParameterError("convergence_study: mode out of range");

    DiffusionParams dp;
    dp.d_u = dp.d_v = p.d;
    dp.sigma1 = dp.sigma2 = p.sigma;
    dp.rho = p.rho;
    KineticParams none;  // equal stoichiometry on both sides: no reaction
    none.alpha1 = none.alpha2 = 1.0;
    none.beta1 = none.beta2 = 1.0;

    std::vector<double> coeffs(static_cast<std::size_t>(p.domain.n_modes), 0.0);
    coeffs[static_cast<std::size_t>(p.mode)] = p.amplitude;
    const Field u0 = Field::from_spectral(p.domain, coeffs);
    coeffs[static_cast<std::size_t>(p.mode)] = p.exact_coefficient(p.t_end);
    const Field exact = Field::from_spectral(p.domain, coeffs);
    const double scale = exact.sup_norm();

    ConvergenceResult res;
    for (double dt : dts) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = p.t_end;
        cfg.scheme = scheme;
        const int total = cfg.steps();
        SolverState s(u0, u0);
        for (int k = 0; k < total; ++k) {
            if (scheme == Scheme::l1_imex) {
                step_l1_imex(s, cfg, dp, none);
            } else {
                step_ml_mild(s, cfg, dp, none);
            }
        }
        const auto& a = s.u.nodal();
        const auto& b = exact.nodal();
        double err = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) err = std::max(err, std::fabs(a[j] - b[j]));
        res.dts.push_back(dt);
        res.errors.push_back(scale > 0.0 ? err / scale : err);
    }
    const bool at_roundoff = std::all_of(res.errors.begin(), res.errors.end(),
                                         [](double e) { return e <= 1e-10; });
    if (!at_roundoff) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(res.dts.size());
        for (std::size_t k = 0; k < res.dts.size(); ++k) {
            const double x = std::log(res.dts[k]);
            const double y = std::log(std::max(res.errors[k], 1e-300));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return res;
}

}  // namespace fracrd
