#include "fracrd/errors.hpp"
#include "fracrd/specfun.hpp"
#include "fracrd/verify.hpp"

#include "gen.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <numbers>

using namespace fracrd;

namespace {

constexpr double kPi = std::numbers::pi;

double ctx(const CheckResult& r, const std::string& key) {
    for (const auto& [k, v] : r.context)
        if (k == key) return v;
    FAIL("missing context key " << key);
    return 0;
}

SolverConfig config(double dt, double t_end) {
    SolverConfig c;
    c.dt = dt;
    c.t_end = t_end;
    return c;
}

Field constant(const Domain1D& dom, double c) {
    return Field::sample(dom, [c](double) { return c; });
}

Field cos_profile(const Domain1D& dom) {
    return Field::sample(dom, [&](double x) { return 0.5 * (1 - std::cos(2 * kPi * x / dom.length)); });
}

const Domain1D kNeu{1.0, 64, Boundary::neumann, Exterior::boundary};

}  // namespace

TEST_CASE("lyapunov value") {
    const Domain1D dom{kPi, 32, Boundary::neumann, Exterior::boundary};
    CHECK(lyapunov_value(Field(dom), Field(dom), {2, 3, 0.5, 0.2}) == 0.0);
    CHECK(lyapunov_value(constant(dom, 1), constant(dom, 1), {2, 3, 0.5, 0.2}) == doctest::Approx(0.7 * kPi));
    CHECK(lyapunov_value(constant(dom, 1), constant(dom, 1), {3, 3, 1.0 / 3, 1.0 / 3}) ==
          doctest::Approx(2 * kPi / 3).epsilon(1e-14));
}

TEST_CASE("lyapunov check on an equilibrium and on a corrupted row") {
    const auto tr = simulate(constant(kNeu, 1), constant(kNeu, 1), {1, 1, 0.5, 0.5, 0.6}, KineticParams{},
                             config(1.0 / 32, 1));
    REQUIRE(tr.weights);
    for (const auto& r : tr.rows) CHECK(*r.lyapunov == *tr.rows[0].lyapunov);
    const auto ok = check_lyapunov_monotone(tr, *tr.weights, 1e-6);
    CHECK(ok.holds);
    CHECK(ok.margin >= 0.0);
    CHECK(ctx(ok, "margin_initial") >= 0.0);

    auto bad = tr;
    bad.rows[5].lyapunov = *bad.rows[0].lyapunov * 1.01;
    const auto fail = check_lyapunov_monotone(bad, *bad.weights, 1e-6);
    CHECK_FALSE(fail.holds);
    CHECK(fail.margin < 0.0);
    CHECK(ctx(fail, "t_worst") == doctest::Approx(5.0 / 32));

    auto other = simulate(constant(kNeu, 1), constant(kNeu, 1), {}, KineticParams{1, 1, 1, 2, 1, 1},
                          config(0.25, 1));
    CHECK_THROWS_AS(check_lyapunov_monotone(other, *tr.weights, 1e-6), RegimeMismatch);
}

TEST_CASE("sup-norm bound check") {
    const auto tr = simulate(cos_profile(kNeu), cos_profile(kNeu), {1, 0.5, 0.5, 0.7, 0.7}, KineticParams{},
                             config(1.0 / 64, 1));
    const auto bounds = linf_bounds(tr.regime, tr.Lambda);
    CHECK(check_linf_bounds(tr, bounds, 0.02).holds);
    // the initial row alone
    auto first = tr;
    first.rows.resize(1);
    CHECK(check_linf_bounds(first, bounds, 0.0).holds);
    auto bad = tr;
    bad.rows[3].linf_v = 9.5;
    CHECK_FALSE(check_linf_bounds(bad, bounds, 0.02).holds);
}

TEST_CASE("maximum principle check") {
    const Domain1D dir{kPi, 64, Boundary::dirichlet, Exterior::boundary};
    const Field s = Field::sample(dir, [](double x) { return std::sin(x); });
    const KineticParams none{1, 1, 1, 1, 1, 1};
    CHECK(check_max_principle(simulate(s, s, {}, none, config(0.05, 1))).holds);

    const auto flat = simulate(constant(kNeu, 2), constant(kNeu, 3), {1, 1, 0.5, 0.5, 0.5}, none, config(0.05, 1));
    for (const auto& r : flat.rows) {
        CHECK(r.linf_u == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(r.linf_v == doctest::Approx(3.0).epsilon(1e-14));
    }
    CHECK(check_max_principle(flat).holds);

    gen::Gen g(3);
    for (int k = 0; k < 10; ++k) {
        const Field u = random_nonnegative_field(kNeu, g.engine(), 1.0);
        const auto tr = simulate(u, u, {1, 1, 0.3, 0.8, 0.5}, none, config(1.0 / 64, 0.5));
        const auto r = check_max_principle(tr);
        CHECK(r.holds);
        CHECK(ctx(r, "step_margin") >= -1e-10);
    }

    auto bad = flat;
    bad.rows[4].linf_u = 2.1;
    CHECK_FALSE(check_max_principle(bad).holds);
}

TEST_CASE("stroock-varopoulos") {
    gen::Gen g(4);
    for (double sig : {0.25, 0.5, 0.75}) {
        const Field u = random_nonnegative_field(kNeu, g.engine(), 1.0);
        const auto eq = check_stroock_varopoulos(u, 2.0, sig);
        CHECK(eq.holds);
        CHECK(std::abs(ctx(eq, "lhs") - ctx(eq, "rhs")) <= 1e-12 * std::abs(ctx(eq, "lhs")));
        for (double p : {1.5, 3.0, 5.0}) CHECK(check_stroock_varopoulos(u, p, sig).holds);
    }
    const auto zero = check_stroock_varopoulos(constant(kNeu, 2.0), 3.0, 0.5);
    CHECK(zero.holds);
    CHECK(std::abs(ctx(zero, "lhs")) < 1e-12);
    CHECK(std::abs(ctx(zero, "rhs")) < 1e-12);

    Field neg = cos_profile(kNeu);
    neg.nodal_mut()[10] = -0.5;
    const auto bad = check_stroock_varopoulos(neg, 3.0, 0.5);
    CHECK_FALSE(bad.holds);
    CHECK_FALSE(bad.note.empty());
}

TEST_CASE("gronwall") {
    const auto none = check_gronwall(0.5, 1e-14, 2.0, 1.0, 100);
    CHECK(ctx(none, "psi_T") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ctx(none, "bound_T") == doctest::Approx(2.0).epsilon(1e-12));

    const auto classical = check_gronwall(1.0, 0.7, 1.0, 1.0, 4000);
    CHECK(classical.holds);
    CHECK(ctx(classical, "bound_T") == doctest::Approx(std::exp(0.7)).epsilon(1e-13));
    CHECK(ctx(classical, "rel_gap_T") < 1e-3);

    // equality case against an independent trapezoidal Volterra solve
    const double e = oracle::mittag_leffler_series(0.5, 1, 1.0);
    const auto trap = oracle::volterra_trapezoid(0.5, 1.0, 1.0, 1.0, 4000);
    CHECK(trap.back() == doctest::Approx(e).epsilon(1e-3));
    double prev_gap = 1;
    for (int n : {256, 1024, 4096}) {
        const auto r = check_gronwall(0.5, 1.0, 1.0, 1.0, n);
        CHECK(r.holds);
        CHECK(ctx(r, "below_margin") >= 0.0);
        CHECK(ctx(r, "bound_T") == doctest::Approx(e).epsilon(1e-13));
        CHECK(ctx(r, "rel_gap_T") < prev_gap);
        prev_gap = ctx(r, "rel_gap_T");
    }
    CHECK(prev_gap < 0.01);
    CHECK_THROWS_AS(check_gronwall(0.0, 1, 1, 1, 10), ParameterError);
}

TEST_CASE("caputo convexity") {
    auto id = [](double x) { return x; };
    auto one = [](double) { return 1.0; };
    auto t = [](double s) { return s; };
    const auto lin = check_caputo_convexity([](double s) { return std::sin(3 * s); }, 1.0, 0.6, id, one, 20);
    CHECK(lin.holds);
    CHECK(std::abs(lin.margin) < 1e-12);

    // x = t, phi = x^2: LHS = D t^2 and RHS = 2 t D t in closed form
    const auto sq = check_caputo_convexity(t, 1.0, 0.5, [](double x) { return x * x; },
                                           [](double x) { return 2 * x; }, 10);
    CHECK(sq.holds);
    const double lhs = oracle::caputo_monomial(2, 0.5, 1.0), rhs = 2 * oracle::caputo_monomial(1, 0.5, 1.0);
    CHECK(lhs < rhs);

    gen::for_all(20, 5, [](gen::Gen& g, int) {
        const auto a = g.vec(5, -1, 1);
        auto path = [a](double s) {
            double v = a[0];
            for (int m = 1; m < 5; ++m) v += a[m] / m * std::sin(m * kPi * s);
            return v;
        };
        auto ex = [](double x) { return std::exp(x); };
        CHECK(check_caputo_convexity(path, 1.0, g.uniform(0.2, 1.0), ex, ex, 16).holds);
    });

    CHECK_FALSE(check_caputo_convexity(t, 1.0, 0.5, [](double x) { return -x * x; },
                                       [](double x) { return -2 * x; }, 10)
                    .holds);
}

TEST_CASE("fractional integral undoes the caputo derivative") {
    const auto c = check_frac_identity([](double) { return 3.0; }, 0.5, 1.0, 64, 1e-12);
    CHECK(c.holds);
    CHECK(ctx(c, "max_error") == 0.0);
    for (int k : {1, 2}) {
        double prev = 1;
        for (int n : {64, 256, 1024}) {
            const auto r = check_frac_identity([k](double s) { return std::pow(s, k); }, 0.5, 1.0, n, 1e-2);
            if (n == 1024) CHECK(r.holds);
            CHECK(ctx(r, "max_error") < prev / 3);
            prev = ctx(r, "max_error");
        }
    }
    CHECK_FALSE(check_frac_identity([](double s) { return std::sin(40 * s); }, 0.5, 1.0, 8, 1e-2).holds);
}

TEST_CASE("propagator bound") {
    gen::Gen g(6);
    std::vector<Field> fs;
    for (int k = 0; k < 3; ++k) fs.push_back(random_nonnegative_field(kNeu, g.engine(), 1.0));
    std::vector<double> ts;
    for (int k = 1; k <= 40; ++k) ts.push_back(0.25 * k);

    const auto classical = check_p_rho_bound(0.5, 1.0, 1.0, fs, ts);
    CHECK(classical.holds);
    CHECK(ctx(classical, "empirical_C") <= 1.0);

    // single mode: ratio is E_{rho,rho}(-d mu^sigma t^rho), at most 1/Gamma(rho)
    std::vector<double> c(64, 0.0);
    c[2] = 1.0;
    const auto single = check_p_rho_bound(0.5, 0.6, 1.0, {Field::from_spectral(kNeu, c)}, {1e-6, 0.5});
    CHECK(single.holds);
    const double lam = std::pow(kNeu.eigenvalue(2), 0.5);
    CHECK(ctx(single, "empirical_C") ==
          doctest::Approx(oracle::mittag_leffler_series(0.6, 0.6, -lam * std::pow(1e-6, 0.6))).epsilon(1e-10));
    CHECK(ctx(single, "empirical_C") <= 1 / std::tgamma(0.6));

    const auto skipped = check_p_rho_bound(0.5, 0.6, 1.0, {Field(kNeu)}, ts);
    CHECK(skipped.skipped);
    CHECK_FALSE(skipped.note.empty());
}

TEST_CASE("random fields are smooth, nonnegative and scaled") {
    gen::Gen g(8);
    for (int k = 0; k < 50; ++k) {
        const Field f = random_nonnegative_field(kNeu, g.engine(), 2.5);
        CHECK(f.min() >= 0.0);
        CHECK(f.sup_norm() == doctest::Approx(2.5).epsilon(1e-14));
    }
}

TEST_CASE("suite: passes, is reproducible, and every check fails when corrupted") {
    SuiteConfig cfg;
    cfg.domain.n_modes = 64;
    cfg.solver.t_end = 0.5;
    cfg.solver.dt = 1.0 / 256;
    cfg.random_fields = 5;
    cfg.random_tuples = 1000;
    cfg.convexity_paths = 3;
    cfg.config_hash = "abc";
    const auto a = run_suite(cfg);
    for (const auto& c : a.checks) {
        INFO(c.name << " margin " << c.margin);
        CHECK(c.holds);
    }
    CHECK(a.all_hold());
    const auto b = run_suite(cfg);
    CHECK(a.to_json() == b.to_json());
    const auto j = nlohmann::json::parse(a.to_json());
    CHECK(j["config_hash"] == "abc");
    CHECK(j["checks"].size() == a.checks.size());

    cfg.corrupt = true;
    const auto bad = run_suite(cfg);
    CHECK(bad.passed() == 0);
    for (const auto& c : bad.checks) {
        INFO(c.name);
        CHECK_FALSE(c.holds);
    }
}
