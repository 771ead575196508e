#include "fracrd/verify.hpp"

#include "fracrd/errors.hpp"
#include "fracrd/specfun.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fracrd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CheckResult make_result(std::string name, double margin, double tol) {
    CheckResult r;
    r.name = std::move(name);
    r.margin = margin;
    r.tolerance = tol;
    r.holds = std::isfinite(margin) && margin >= -tol;
    return r;
}

// L1 Caputo derivative of samples y_0..y_k at t_k with weights b.
double l1_derivative(const std::vector<double>& y, std::size_t k, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += b[j] * (y[k - j] - y[k - j - 1]);
    return s;
}

}  // namespace

int VerificationReport::passed() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                          [](const CheckResult& c) { return c.holds; }));
}

int VerificationReport::failed() const { return static_cast<int>(checks.size()) - passed(); }

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["seed"] = seed;
    doc["config_hash"] = config_hash;
    doc["summary"] = {{"total", checks.size()}, {"passed", passed()}, {"failed", failed()}};
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["holds"] = c.holds;
        j["skipped"] = c.skipped;
        // NaN is not representable in JSON.
        j["margin"] = std::isfinite(c.margin) ? nlohmann::ordered_json(c.margin) : nlohmann::ordered_json();
        j["tolerance"] = c.tolerance;
        nlohmann::ordered_json ctx = nlohmann::ordered_json::object();
        for (const auto& [k, v] : c.context) {
            ctx[k] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json();
        }
        j["context"] = ctx;
        if (!c.note.empty()) j["note"] = c.note;
        arr.push_back(j);
    }
    doc["checks"] = arr;
    return doc.dump(2);
}

double lyapunov_value(const Field& u, const Field& v, const LyapunovWeights& w) {
    const auto& a = u.nodal();
    const auto& b = v.nodal();
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        s += w.delta1 * std::pow(std::max(a[j], 0.0), w.p) + w.delta2 * std::pow(std::max(b[j], 0.0), w.q);
    }
    return s * u.domain().spacing();
}

CheckResult check_lyapunov_monotone(const Trajectory& traj, const LyapunovWeights& w, double tol) {
    if (traj.regime.tag != RegimeTag::I && traj.regime.tag != RegimeTag::II) {
        throw RegimeMismatch("check_lyapunov_monotone: trajectory is in regime " +
                             to_string(traj.regime.tag));
    }
    if (traj.rows.empty() || !traj.rows.front().lyapunov) {
        throw ParameterError("check_lyapunov_monotone: trajectory carries no Lyapunov values");
    }
    const double l0 = *traj.rows.front().lyapunov;
    double lmax = -kInf;
    double t_worst = 0.0;
    for (const auto& r : traj.rows) {
        const double l = r.lyapunov.value_or(std::numeric_limits<double>::quiet_NaN());
        if (!(l <= lmax)) {
            lmax = l;
            t_worst = r.t;
        }
    }
    const double bound = traj.domain_measure *
                         (w.delta1 * std::pow(traj.Lambda, w.p) + w.delta2 * std::pow(traj.Lambda, w.q));
    const double m_decay = (l0 - lmax) / l0;
    const double m_init = (bound - l0) / bound;
    auto r = make_result("lyapunov_monotone", std::min(m_decay, m_init), tol);
    r.context = {{"L0", l0},         {"L_max", lmax},    {"t_worst", t_worst}, {"bound", bound},
                 {"margin_decay", m_decay}, {"margin_initial", m_init}, {"p", w.p}, {"q", w.q}};
    return r;
}

CheckResult check_linf_bounds(const Trajectory& traj, std::pair<double, double> bounds, double slack) {
    double mu = 0.0, mv = 0.0;
    for (const auto& r : traj.rows) {
        mu = std::isnan(r.linf_u) ? r.linf_u : std::max(mu, r.linf_u);
        mv = std::isnan(r.linf_v) ? r.linf_v : std::max(mv, r.linf_v);
        if (std::isnan(mu) || std::isnan(mv)) break;
    }
    const double margin = std::min(1.0 - mu / bounds.first, 1.0 - mv / bounds.second);
    auto r = make_result("linf_bounds", margin, slack);
    r.context = {{"max_linf_u", mu}, {"max_linf_v", mv}, {"Lambda_u", bounds.first}, {"Lambda_v", bounds.second}};
    return r;
}

CheckResult check_max_principle(const Trajectory& traj) {
    if (traj.rows.empty()) throw ParameterError("check_max_principle: empty trajectory");
    const double su = traj.rows.front().linf_u;
    const double sv = traj.rows.front().linf_v;
    double margin = kInf;
    double step_margin = kInf;
    double t_worst = 0.0;
    for (std::size_t n = 0; n < traj.rows.size(); ++n) {
        const auto& r = traj.rows[n];
        const double m = std::min(su > 0 ? (su - r.linf_u) / su : -r.linf_u,
                                  sv > 0 ? (sv - r.linf_v) / sv : -r.linf_v);
        if (!(m >= margin)) {
            margin = m;
            t_worst = r.t;
        }
        if (n > 0) {
            const auto& p = traj.rows[n - 1];
            const double s = std::min(su > 0 ? (p.linf_u - r.linf_u) / su : 0.0,
                                      sv > 0 ? (p.linf_v - r.linf_v) / sv : 0.0);
            step_margin = std::min(step_margin, s);
        }
    }
    auto r = make_result("max_principle", margin, Tolerances::max_principle);
    r.context = {{"sup_u0", su}, {"sup_v0", sv}, {"t_worst", t_worst}, {"step_margin", step_margin}};
    return r;
}

CheckResult check_stroock_varopoulos(const Field& u, double p, double sigma) {
    if (!(p > 1.0)) throw ParameterError("check_stroock_varopoulos: p must exceed 1");
    const Domain1D& dom = u.domain();
    const auto& x = u.nodal();
    const double lo = *std::min_element(x.begin(), x.end());
    std::ostringstream name;
    name << "stroock_varopoulos(p=" << p << ", sigma=" << sigma << ")";
    if (lo < -1e-12) {
        auto r = make_result(name.str(), lo, Tolerances::stroock_varopoulos);
        r.holds = false;
        r.note = "field takes negative values";
        r.context = {{"min_u", lo}};
        return r;
    }
    const SpectralOperator op(dom, sigma);
    const auto lu = op.apply(u).nodal();
    std::vector<double> half(x.size());
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double xj = std::max(x[j], 0.0);
        lhs += std::pow(xj, p - 1.0) * lu[j];
        half[j] = std::pow(xj, 0.5 * p);
    }
    lhs *= dom.spacing();
    const double rhs = 4.0 * (p - 1.0) / (p * p) *
                       sobolev_seminorm(Field::from_nodal(dom, std::move(half)), sigma);
    const double margin = (lhs - rhs) / (std::fabs(lhs) + std::fabs(rhs) + 1.0);
    auto r = make_result(name.str(), margin, Tolerances::stroock_varopoulos);
    r.context = {{"lhs", lhs}, {"rhs", rhs}, {"p", p}, {"sigma", sigma}};
    return r;
}

CheckResult check_gronwall(double alpha, double C, double psi0, double T, int n_steps) {
    if (!(alpha > 0.0 && alpha <= 1.0) || !(C >= 0.0) || !(psi0 >= 0.0) || !(T > 0.0) || n_steps < 1) {
        throw ParameterError("check_gronwall: need alpha in (0, 1], C >= 0, psi0 >= 0, T > 0, n_steps >= 1");
    }
    const double h = T / n_steps;
    const double c = C * std::pow(h, alpha) / std::tgamma(alpha + 1.0);
    std::vector<double> psi(static_cast<std::size_t>(n_steps) + 1, psi0);
    // Weights depend on n - j only: w_m = m^alpha - (m-1)^alpha.
    std::vector<double> w(static_cast<std::size_t>(n_steps) + 1, 0.0);
    for (int m = 1; m <= n_steps; ++m) w[static_cast<std::size_t>(m)] = std::pow(m, alpha) - std::pow(m - 1.0, alpha);
    double margin = kInf;
    double t_worst = 0.0;
    for (int n = 1; n <= n_steps; ++n) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += w[static_cast<std::size_t>(n - j)] * psi[static_cast<std::size_t>(j)];
        psi[static_cast<std::size_t>(n)] = psi0 + c * s;
    }
    for (int n = 0; n <= n_steps; ++n) {
        const double t = n * h;
        const double bound = psi0 * specfun::mittag_leffler(alpha, 1.0, C * std::pow(t, alpha));
        const double m = bound > 0 ? (bound - psi[static_cast<std::size_t>(n)]) / bound
                                   : -psi[static_cast<std::size_t>(n)];
        if (m < margin) {
            margin = m;
            t_worst = t;
        }
    }
    const double bound_T = psi0 * specfun::mittag_leffler(alpha, 1.0, C * std::pow(T, alpha));
    const double rel_T = bound_T > 0 ? std::fabs(psi.back() - bound_T) / bound_T : std::fabs(psi.back());
    auto r = make_result("gronwall", std::min(margin, -rel_T), Tolerances::gronwall);
    r.context = {{"alpha", alpha},        {"C", C},           {"psi0", psi0},
                 {"T", T},                {"n_steps", static_cast<double>(n_steps)},
                 {"psi_T", psi.back()},   {"bound_T", bound_T}, {"rel_gap_T", rel_T},
                 {"below_margin", margin}, {"t_worst", t_worst}};
    return r;
}

CheckResult check_caputo_convexity(const std::function<double(double)>& x, double T, double rho,
                                   const std::function<double(double)>& phi,
                                   const std::function<double(double)>& dphi, int n_samples) {
    if (n_samples < 1 || !(T > 0.0)) throw ParameterError("check_caputo_convexity: need T > 0, n_samples >= 1");
    constexpr int refine = 16;
    const int n = refine * n_samples;
    const double h = T / n;
    const auto b = caputo_l1_coeffs(rho, h, n);
    std::vector<double> xs(static_cast<std::size_t>(n) + 1), ys(xs.size());
    for (int k = 0; k <= n; ++k) {
        xs[static_cast<std::size_t>(k)] = x(k * h);
        ys[static_cast<std::size_t>(k)] = phi(xs[static_cast<std::size_t>(k)]);
    }
    // For rho = 1 only b_0 exists and the sums collapse to backward differences.
    std::vector<double> bw(static_cast<std::size_t>(n), 0.0);
    std::copy(b.begin(), b.end(), bw.begin());
    double margin = kInf;
    double t_worst = 0.0;
    for (int s = 1; s <= n_samples; ++s) {
        const auto k = static_cast<std::size_t>(refine * s);
        const double lhs = l1_derivative(ys, k, bw);
        const double rhs = dphi(xs[k]) * l1_derivative(xs, k, bw);
        const double m = (rhs - lhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
        if (!(m >= margin)) {
            margin = m;
            t_worst = k * h;
        }
    }
    auto r = make_result("caputo_convexity", margin, Tolerances::convexity);
    r.context = {{"rho", rho}, {"T", T}, {"samples", static_cast<double>(n_samples)}, {"t_worst", t_worst}};
    return r;
}

CheckResult check_frac_identity(const std::function<double(double)>& f, double rho, double T,
                                int n_steps, double tol) {
    if (n_steps < 1 || !(T > 0.0)) throw ParameterError("check_frac_identity: need T > 0, n_steps >= 1");
    const double h = T / n_steps;
    const auto n = static_cast<std::size_t>(n_steps);
    const auto b = caputo_l1_coeffs(rho, h, n_steps);
    std::vector<double> bw(n, 0.0);
    std::copy(b.begin(), b.end(), bw.begin());
    std::vector<double> fs(n + 1), d(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) fs[k] = f(static_cast<double>(k) * h);
    for (std::size_t k = 1; k <= n; ++k) d[k] = l1_derivative(fs, k, bw);
    // Product-rectangle fractional integral with the derivative frozen at the
    // right end of each cell.
    std::vector<double> w(n + 1, 0.0);
    const double c = std::pow(h, rho) / std::tgamma(rho + 1.0);
    for (std::size_t m = 1; m <= n; ++m) {
        w[m] = c * (std::pow(static_cast<double>(m), rho) - std::pow(static_cast<double>(m - 1), rho));
    }
    double err = 0.0, scale = 1.0;
    double t_worst = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j) s += w[k - j] * d[j + 1];
        const double target = fs[k] - fs[0];
        scale = std::max(scale, std::fabs(target));
        const double e = std::fabs(s - target);
        if (!(e <= err)) {
            err = e;
            t_worst = static_cast<double>(k) * h;
        }
    }
    auto r = make_result("frac_identity", -err / scale, tol);
    r.context = {{"rho", rho}, {"T", T}, {"n_steps", static_cast<double>(n_steps)},
                 {"max_error", err}, {"t_worst", t_worst}};
    return r;
}

CheckResult check_p_rho_bound(double sigma, double rho, double d, const std::vector<Field>& fields,
                              const std::vector<double>& t_grid) {
    const double cap = 1.0 / std::tgamma(rho);
    double worst = 0.0;
    double t_worst = 0.0;
    int used = 0;
    // Recorded, not asserted: does the ratio decrease along the t grid?
    double increases = 0.0;
    for (const Field& f : fields) {
        const double den = sobolev_seminorm(f, sigma);
        if (den == 0.0) continue;
        ++used;
        const Domain1D& dom = f.domain();
        const auto& w = f.spectral();
        double prev = kInf;
        for (double t : t_grid) {
            double num = 0.0;
            for (int i = 0; i < dom.n_modes; ++i) {
                const double mu = dom.eigenvalue(i);
                if (mu == 0.0) continue;
                const double ms = std::pow(mu, sigma);
                const double k = std::pow(t, 1.0 - rho) * specfun::ml_kernel(rho, ms, d, t);
                const double c = k * w[static_cast<std::size_t>(i)];
                num += ms * c * c;
            }
            const double ratio = std::sqrt(num / den);
            if (!(ratio <= worst)) {
                worst = ratio;
                t_worst = t;
            }
            if (ratio > prev) increases += 1.0;
            prev = ratio;
            if (std::isnan(ratio)) break;
        }
        if (std::isnan(worst)) break;
    }
    if (used == 0) {
        CheckResult r;
        r.name = "p_rho_bound";
        r.holds = true;
        r.skipped = true;
        r.tolerance = Tolerances::p_rho;
        r.note = "all sample fields have zero H^sigma seminorm; ratio undefined";
        return r;
    }
    auto r = make_result("p_rho_bound", (cap - worst) / cap, Tolerances::p_rho);
    r.context = {{"empirical_C", worst}, {"cap_1_over_gamma_rho", cap}, {"t_worst", t_worst},
                 {"fields", static_cast<double>(used)}, {"ratio_increases", increases}};
    return r;
}

Field random_nonnegative_field(const Domain1D& dom, std::mt19937_64& rng, double Lambda) {
    if (!(Lambda > 0.0)) throw ParameterError("random_nonnegative_field: Lambda must be positive");
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_real_distribution<double> centre(0.3, 0.7), width(0.03, 0.05), height(0.2, 1.0);
    struct Bump {
        double c, w, a;
    };
    std::vector<Bump> bumps(static_cast<std::size_t>(count(rng)));
    for (auto& b : bumps) {
        b.c = centre(rng) * dom.length;
        b.w = width(rng) * dom.length;
        b.a = height(rng);
    }
    Field f = Field::sample(dom, [&](double x) {
        double s = 0.0;
        for (const auto& b : bumps) {
            const double z = (x - b.c) / b.w;
            s += b.a * std::exp(-z * z);
        }
        return s;
    });
    const double top = f.sup_norm();
    for (double& v : f.nodal_mut()) v *= Lambda / top;
    return f;
}

// ---------------------------------------------------------------------------

VerificationReport run_suite(const SuiteConfig& cfg) {
    VerificationReport rep;
    rep.seed = cfg.seed;
    rep.config_hash = cfg.config_hash;
    std::mt19937_64 rng(cfg.seed);
    const Domain1D& dom = cfg.domain;
    dom.validate();

    auto default_profile = [&] {
        return Field::sample(dom, [&](double x) {
            return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * x / dom.length));
        });
    };
    const Field u0 = cfg.initial ? cfg.initial->first : default_profile();
    const Field v0 = cfg.initial ? cfg.initial->second : default_profile();

    // Lyapunov functional and L-infinity bounds on the configured run.
    Trajectory run = simulate(u0, v0, cfg.diffusion, cfg.kinetics, cfg.solver);
    if (run.weights) {
        if (cfg.corrupt && run.rows.size() > 2) {
            auto& mid = run.rows[run.rows.size() / 2];
            mid.lyapunov = *run.rows.front().lyapunov * 1.1;
            mid.linf_u = 10.0 * linf_bounds(run.regime, run.Lambda).first;
        }
        rep.checks.push_back(check_lyapunov_monotone(run, *run.weights, Tolerances::lyapunov));
        rep.checks.push_back(check_linf_bounds(run, linf_bounds(run.regime, run.Lambda), Tolerances::linf_slack));
    } else {
        CheckResult r;
        r.name = "lyapunov_monotone";
        r.holds = true;
        r.skipped = true;
        r.note = "configured kinetics are in regime " + to_string(run.regime.tag) +
                 "; the Lyapunov functional is defined for regimes I and II";
        rep.checks.push_back(r);
    }

    // Maximum principle for pure diffusion of the same data.
    {
        KineticParams none = cfg.kinetics;
        none.alpha2 = none.alpha1;
        none.beta2 = none.beta1;
        Trajectory heat = simulate(u0, v0, cfg.diffusion, none, cfg.solver);
        if (cfg.corrupt && heat.rows.size() > 1) heat.rows.back().linf_u = 2.0 * heat.rows.front().linf_u;
        rep.checks.push_back(check_max_principle(heat));
    }

    // Stroock-Varopoulos on random profiles; the worst case per (p, sigma).
    for (double p : {2.0, 3.0, 5.0}) {
        for (double sigma : {0.25, 0.5, 0.75}) {
            CheckResult worst;
            worst.margin = kInf;
            for (int k = 0; k < cfg.random_fields; ++k) {
                Field f = random_nonnegative_field(dom, rng, 1.0);
                if (cfg.corrupt && k == 0) f.nodal_mut()[static_cast<std::size_t>(dom.n_modes / 2)] = -0.5;
                CheckResult r = check_stroock_varopoulos(f, p, sigma);
                if (!(r.margin >= worst.margin) || !r.holds) worst = r;
                if (!worst.holds) break;
            }
            if (cfg.random_fields > 0) rep.checks.push_back(worst);
        }
    }

    // Pointwise positivity lemma on random admissible tuples.
    {
        std::uniform_real_distribution<double> xy(0.0, 3.0), rr(0.05, 4.0), tt(0.05, 3.0), gap(0.01, 3.0);
        double margin = kInf;
        int violations = 0;
        for (int k = 0; k < cfg.random_tuples; ++k) {
            const double x = xy(rng), y = xy(rng), r = rr(rng), t = tt(rng), s = t + gap(rng);
            const PointwiseCheck c = check_pointwise_inequality(x, y, r, s, t);
            margin = std::min(margin, c.value);
            if (!c.holds) ++violations;
        }
        if (cfg.corrupt) {
            // r < 0 leaves the admissible set and flips the second factor.
            const PointwiseCheck c = check_pointwise_inequality(2.0, 1.0, -1.0, 2.0, 1.0);
            margin = std::min(margin, c.value);
            if (!c.holds) ++violations;
        }
        CheckResult r;
        r.name = "positivity_lemma";
        r.margin = margin;
        r.tolerance = Tolerances::positivity;
        r.holds = violations == 0;
        r.context = {{"tuples", static_cast<double>(cfg.random_tuples)}, {"violations", static_cast<double>(violations)}};
        r.note = "margin is the smallest product; each tuple is judged against its own scale";
        rep.checks.push_back(r);
    }

    // Weakly singular Gronwall in its equality case.
    {
        CheckResult r = check_gronwall(0.5, 1.0, 1.0, 1.0, 2000);
        if (cfg.corrupt) {
            // Solve with a larger constant than the bound assumes.
            CheckResult big = check_gronwall(0.5, 2.0, 1.0, 1.0, 2000);
            const double bound_small = specfun::mittag_leffler(0.5, 1.0, 1.0);
            double psi_T = 0.0;
            for (const auto& [k, v] : big.context) {
                if (k == "psi_T") psi_T = v;
            }
            r = make_result("gronwall", (bound_small - psi_T) / bound_small, Tolerances::gronwall);
            r.context = {{"psi_T", psi_T}, {"bound_T", bound_small}};
            r.note = "corrupted: Volterra solution with C = 2 against the C = 1 bound";
        }
        rep.checks.push_back(r);
    }

    // Caputo convexity on random smooth paths.
    {
        const double rho = cfg.diffusion.rho;
        std::normal_distribution<double> coef(0.0, 1.0);
        CheckResult worst;
        worst.margin = kInf;
        for (int k = 0; k < cfg.convexity_paths; ++k) {
            std::vector<double> a(5), bcoef(5);
            for (int m = 0; m < 5; ++m) {
                a[static_cast<std::size_t>(m)] = coef(rng) / (m + 1);
                bcoef[static_cast<std::size_t>(m)] = coef(rng) / (m + 1);
            }
            auto path = [a, bcoef](double t) {
                double s = a[0];
                for (int m = 1; m < 5; ++m) {
                    s += a[static_cast<std::size_t>(m)] * std::sin(m * std::numbers::pi * t) +
                         bcoef[static_cast<std::size_t>(m)] * std::cos(m * std::numbers::pi * t);
                }
                return s;
            };
            auto square = [](double x) { return x * x; };
            auto twice = [](double x) { return 2.0 * x; };
            auto ex = [](double x) { return std::exp(x); };
            for (int which = 0; which < 2; ++which) {
                CheckResult r = which == 0 ? check_caputo_convexity(path, 1.0, rho, square, twice, 32)
                                           : check_caputo_convexity(path, 1.0, rho, ex, ex, 32);
                if (!(r.margin >= worst.margin)) worst = r;
            }
        }
        if (cfg.corrupt) {
            auto id = [](double t) { return t; };
            worst = check_caputo_convexity(id, 1.0, rho, [](double x) { return -x * x; },
                                           [](double x) { return -2.0 * x; }, 32);
            worst.note = "corrupted: concave map";
        }
        if (cfg.convexity_paths > 0 || cfg.corrupt) rep.checks.push_back(worst);
    }

    // I^rho D^rho f = f - f(0) on monomials.
    {
        const double rho = cfg.diffusion.rho;
        for (int k : {1, 2}) {
            if (cfg.corrupt) break;
            auto mono = [k](double t) { return std::pow(t, k); };
            CheckResult r = check_frac_identity(mono, rho, 1.0, 1024, Tolerances::frac_identity);
            r.name += k == 1 ? "(t)" : "(t^2)";
            rep.checks.push_back(r);
        }
        if (cfg.corrupt) {
            auto wave = [](double t) { return std::sin(40.0 * t); };
            CheckResult r = check_frac_identity(wave, rho, 1.0, 8, Tolerances::frac_identity);
            r.name += "(corrupted: 8 steps for sin 40t)";
            rep.checks.push_back(r);
        }
    }

    // Boundedness of t^{1-rho} P_rho(t) in H^sigma.
    {
        std::vector<Field> fields;
        for (int k = 0; k < 3; ++k) fields.push_back(random_nonnegative_field(dom, rng, 1.0));
        if (cfg.corrupt) {
            std::vector<double> bad(static_cast<std::size_t>(dom.n_modes), 0.0);
            bad[1] = std::numeric_limits<double>::quiet_NaN();
            fields.insert(fields.begin(), Field::from_spectral(dom, bad));
        }
        std::vector<double> ts;
        for (int k = 0; k < 20; ++k) ts.push_back(10.0 * std::pow(10.0, -3.0 + 3.0 * k / 19.0));
        rep.checks.push_back(check_p_rho_bound(cfg.diffusion.sigma1, cfg.diffusion.rho, cfg.diffusion.d_u, fields, ts));
    }
    return rep;
}

}  // namespace fracrd
