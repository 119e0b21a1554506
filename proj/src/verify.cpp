#include "wavelab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <random>
#include <thread>

#include <boost/version.hpp>

#include "wavelab/errors.hpp"
#include "wavelab/fit.hpp"

namespace wavelab {

using ojson = nlohmann::ordered_json;

Check& VerifyReport::add(const std::string& name, double measured, const std::string& relation,
                         double threshold, ojson details) {
    Check c;
    c.name = name;
    c.measured = measured;
    c.relation = relation;
    c.threshold = threshold;
    c.details = std::move(details);
    if (relation == "<") c.pass = measured < threshold;
    else if (relation == "<=") c.pass = measured <= threshold;
    else if (relation == ">") c.pass = measured > threshold;
    else if (relation == ">=") c.pass = measured >= threshold;
    else if (relation == "==") c.pass = measured == threshold;
    else throw std::logic_error("unknown relation " + relation);
    if (std::isnan(measured)) c.pass = false;
    checks.push_back(std::move(c));
    return checks.back();
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

ojson VerifyReport::to_json() const {
    ojson j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["status"] = passed() ? "pass" : "fail";
    ojson arr = ojson::array();
    for (const Check& c : checks) {
        ojson e;
        e["name"] = c.name;
        e["status"] = c.pass ? "pass" : "fail";
        e["measured"] = c.measured;
        e["relation"] = c.relation;
        e["threshold"] = c.threshold;
        if (!c.details.empty()) e["details"] = c.details;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    j["fitted"] = fitted;
    j["environment"] = environment_fingerprint();
    return j;
}

ojson environment_fingerprint() {
    ojson e;
#if defined(__clang__)
    e["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    e["compiler"] = std::string("gcc ") + __VERSION__;
#else
    e["compiler"] = "unknown";
#endif
    e["cxx_standard"] = static_cast<long>(__cplusplus);
    e["boost"] = BOOST_LIB_VERSION;
#ifdef NDEBUG
    e["assertions"] = false;
#else
    e["assertions"] = true;
#endif
    e["double_digits"] = std::numeric_limits<double>::digits;
    return e;
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> s = {"gas", "poincare", "profiles", "interactions",
                                               "simulate-short"};
    return s;
}

VerifyReport run_suite(const std::string& suite, const RunConfig& cfg, std::uint64_t seed) {
    if (suite == "gas") return verify_gas(cfg, seed);
    if (suite == "poincare") return verify_poincare(cfg, seed);
    if (suite == "profiles") return verify_profiles(cfg, seed);
    if (suite == "interactions") return verify_interactions(cfg, seed);
    if (suite == "simulate-short") return verify_simulate_short(cfg, seed);
    throw ConfigError("unknown verify suite '" + suite + "'");
}

// ---------------------------------------------------------------- gas

namespace {

struct Pair {
    double v, w;
};

// Draws in (lo, hi) without touching the endpoints.
double open_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x;
    do {
        x = u(rng);
    } while (x == 0.0);
    return lo + (hi - lo) * x;
}

std::vector<Pair> draw_pairs(std::mt19937_64& rng, long n, double vlo, double vhi, double wlo,
                             double whi) {
    std::vector<Pair> p(n);
    for (auto& q : p) {
        q.v = open_uniform(rng, vlo, vhi);
        q.w = open_uniform(rng, wlo, whi);
    }
    return p;
}

std::vector<Pair> draw_close_pairs(std::mt19937_64& rng, long n, double wlo, double whi,
                                   double delta) {
    std::vector<Pair> p;
    p.reserve(n);
    while (static_cast<long>(p.size()) < n) {
        const double w = open_uniform(rng, wlo, whi);
        const double v = w + open_uniform(rng, -delta, delta);
        if (v > 10.0 * kMinVolume && v != w) p.push_back({v, w});
    }
    return p;
}

// One inequality family: `need(pair)` is the constant a pair requires
// (NaN to skip). The constant is fitted on `fit` and checked on `fresh`.
template <class F>
void fitted_family(VerifyReport& rep, const std::string& name, const std::vector<Pair>& fit,
                   const std::vector<Pair>& fresh, F need) {
    double cmax = -std::numeric_limits<double>::infinity();
    for (const Pair& p : fit) {
        const double c = need(p);
        if (!std::isnan(c)) cmax = std::max(cmax, c);
    }
    const double c_fit = cmax + 0.1 * std::abs(cmax);
    long violations = 0;
    double fresh_max = -std::numeric_limits<double>::infinity();
    for (const Pair& p : fresh) {
        const double c = need(p);
        if (std::isnan(c)) continue;
        fresh_max = std::max(fresh_max, c);
        if (c > c_fit) ++violations;
    }
    rep.fitted[name] = {{"C_fit", c_fit}, {"max_on_fit_sample", cmax}, {"max_on_fresh_sample", fresh_max}};
    rep.add(name + ": violations on fresh sample", double(violations), "==", 0.0,
            {{"C_fit", c_fit}, {"samples", fresh.size()}, {"finite", std::isfinite(c_fit)}});
}

}  // namespace

VerifyReport verify_gas(const RunConfig& cfg, std::uint64_t seed) {
    VerifyReport rep;
    rep.suite = "gas";
    rep.seed = seed;
    const GasParams& g = cfg.gas;
    const WaveChart chart = resolve_chart(cfg);
    const double vs = chart.u_mid.v;
    const long n = cfg.verify.samples;
    std::mt19937_64 rng(seed);

    {
        double worst = 0.0;
        for (long i = 0; i < n; ++i) {
            const double v = open_uniform(rng, 0.05, 20.0);
            worst = std::max(worst, std::abs(lambda1_inverse(lambda1(v, g), g) - v) / v);
        }
        rep.add("lambda1 inverse round trip (relative)", worst, "<", 1e-12);
    }
    {
        long neg = 0;
        for (const Pair& p : draw_pairs(rng, n, 0.0, 3.0 * vs, 0.0, 2.0 * vs)) {
            if (relative_internal_energy(p.v, p.w, g) < 0.0 || relative_pressure(p.v, p.w, g) < 0.0) ++neg;
        }
        rep.add("Q(v|w) >= 0 and p(v|w) >= 0", double(neg), "==", 0.0);
    }

    // family 1: |v - w|^2 <= C Q(v|w), |v - w|^2 <= C p(v|w) on 0 < w < 2v*, 0 < v < 3v*
    {
        const auto a = draw_pairs(rng, n, 0.0, 3.0 * vs, 0.0, 2.0 * vs);
        const auto b = draw_pairs(rng, n, 0.0, 3.0 * vs, 0.0, 2.0 * vs);
        fitted_family(rep, "(1) |v-w|^2 <= C Q(v|w)", a, b, [&](const Pair& p) {
            const double q = relative_internal_energy(p.v, p.w, g);
            return q > 0.0 ? (p.v - p.w) * (p.v - p.w) / q : std::nan("");
        });
        fitted_family(rep, "(1) |v-w|^2 <= C p(v|w)", a, b, [&](const Pair& p) {
            const double q = relative_pressure(p.v, p.w, g);
            return q > 0.0 ? (p.v - p.w) * (p.v - p.w) / q : std::nan("");
        });
    }
    // family 2: |p(v) - p(w)| <= C |v - w| for v, w > v*/2
    {
        const auto a = draw_pairs(rng, n, 0.5 * vs, 10.0 * vs, 0.5 * vs, 10.0 * vs);
        const auto b = draw_pairs(rng, n, 0.5 * vs, 10.0 * vs, 0.5 * vs, 10.0 * vs);
        fitted_family(rep, "(2) |p(v)-p(w)| <= C |v-w|", a, b, [&](const Pair& p) {
            return p.v != p.w ? std::abs(pressure_difference(p.v, p.w, g)) / std::abs(p.v - p.w)
                              : std::nan("");
        });
    }
    // family 3: |v - w| < delta_* expansions in dp = p(v) - p(w)
    {
        const double dstar = cfg.verify.delta_star_factor * vs;
        const double gm = g.gamma;
        auto A = [&](double w) { return (gm + 1.0) / (2.0 * gm) / pressure(w, g); };
        auto B = [&](double w) { return std::pow(pressure(w, g), -1.0 / gm - 1.0) / (2.0 * gm); };
        auto K = [&](double w) {
            return (1.0 + gm) / (3.0 * gm * gm) * std::pow(pressure(w, g), -1.0 / gm - 2.0);
        };
        const auto a = draw_close_pairs(rng, n, 0.5 * vs, 2.0 * vs, dstar);
        const auto b = draw_close_pairs(rng, n, 0.5 * vs, 2.0 * vs, dstar);
        fitted_family(rep, "(3a) p(v|w) <= (A + C|dp|) dp^2", a, b, [&](const Pair& p) {
            const double dp = pressure_difference(p.v, p.w, g);
            if (dp == 0.0) return std::nan("");
            return (relative_pressure(p.v, p.w, g) / (dp * dp) - A(p.w)) / std::abs(dp);
        });
        fitted_family(rep, "(3b) Q(v|w) <= (B + C|dp|) dp^2", a, b, [&](const Pair& p) {
            const double dp = pressure_difference(p.v, p.w, g);
            if (dp == 0.0) return std::nan("");
            return (relative_internal_energy(p.v, p.w, g) / (dp * dp) - B(p.w)) / std::abs(dp);
        });
        long viol = 0;
        double worst = std::numeric_limits<double>::infinity();
        for (const auto* s : {&a, &b}) {
            for (const Pair& p : *s) {
                const double dp = pressure_difference(p.v, p.w, g);
                const double q = relative_internal_energy(p.v, p.w, g);
                const double lower = B(p.w) * dp * dp - K(p.w) * std::abs(dp) * dp * dp;
                const double margin = (q - lower) / (B(p.w) * dp * dp);
                worst = std::min(worst, margin);
                if (q < lower) ++viol;
            }
        }
        rep.add("(3c) Q(v|w) >= B dp^2 - K |dp|^3 (closed-form coefficients)", double(viol), "==", 0.0,
                {{"samples", a.size() + b.size()}, {"min_relative_margin", worst}, {"delta_star", dstar}});
    }
    return rep;
}

// ---------------------------------------------------------------- poincare

VerifyReport verify_poincare(const RunConfig& cfg, std::uint64_t seed) {
    VerifyReport rep;
    rep.suite = "poincare";
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    const int nodes = 64;

    {
        const PoincareResult a = poincare_check([](double) { return 3.0; }, [](double) { return 0.0; }, -1.0, 2.0);
        const std::vector<double> s(nodes, 3.0);
        const PoincareResult b = poincare_check(s, -1.0, 2.0);
        rep.add("constant f: both sides vanish", std::max({std::abs(a.lhs), std::abs(a.rhs), std::abs(b.lhs), std::abs(b.rhs)}),
                "<", 1e-14);
    }
    {
        const PoincareResult a = poincare_check([](double y) { return y; }, [](double) { return 1.0; }, 0.0, 1.0);
        const std::vector<double> y = chebyshev_lobatto_nodes(nodes, 0.0, 1.0);
        const PoincareResult b = poincare_check(y, 0.0, 1.0);
        const double e = std::max({std::abs(a.lhs - 1.0 / 12), std::abs(a.rhs - 1.0 / 12),
                                   std::abs(b.lhs - 1.0 / 12), std::abs(b.rhs - 1.0 / 12)});
        rep.add("f(y) = y on [0,1]: lhs = rhs = 1/12", e, "<", 1e-10,
                {{"analytic", {a.lhs, a.rhs}}, {"samples", {b.lhs, b.rhs}}});
    }
    {
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        std::uniform_int_distribution<int> degree(0, 5);
        long viol = 0;
        double worst_gap = -std::numeric_limits<double>::infinity();
        double worst_oracle = 0.0;
        for (long k = 0; k < cfg.verify.polynomials; ++k) {
            const double c = open_uniform(rng, -2.0, 2.0);
            const double d = c + open_uniform(rng, 0.05, 4.0);
            const int deg = degree(rng);
            std::vector<double> a(deg + 1);
            for (double& x : a) x = coef(rng);
            // polynomial in the local variable s = (2y - c - d)/(d - c)
            auto f = [&](double y) {
                const double s = (2.0 * y - c - d) / (d - c);
                double r = 0.0;
                for (int i = deg; i >= 0; --i) r = r * s + a[i];
                return r;
            };
            auto df = [&](double y) {
                const double s = (2.0 * y - c - d) / (d - c);
                double r = 0.0;
                for (int i = deg; i >= 1; --i) r = r * s + i * a[i];
                return r * 2.0 / (d - c);
            };
            const std::vector<double> y = chebyshev_lobatto_nodes(nodes, c, d);
            std::vector<double> fs(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) fs[i] = f(y[i]);
            const PoincareResult r = poincare_check(fs, c, d);
            if (!(r.lhs <= r.rhs + 1e-12)) ++viol;
            worst_gap = std::max(worst_gap, r.lhs - r.rhs);
            // oracle at doubled resolution with the exact derivative
            const PoincareResult o = poincare_check(f, df, c, d);
            worst_oracle = std::max({worst_oracle, std::abs(o.lhs - r.lhs), std::abs(o.rhs - r.rhs)});
        }
        rep.add("random polynomials: lhs <= rhs + 1e-12 (violations)", double(viol), "==", 0.0,
                {{"polynomials", cfg.verify.polynomials}, {"max_lhs_minus_rhs", worst_gap}});
        rep.add("sample mode agrees with exact-derivative oracle", worst_oracle, "<", 1e-9);
    }
    return rep;
}

// ---------------------------------------------------------------- profiles

VerifyReport verify_profiles(const RunConfig& cfg, std::uint64_t seed) {
    VerifyReport rep;
    rep.suite = "profiles";
    rep.seed = seed;
    const GasParams& g = cfg.gas;
    const WaveChart c = resolve_chart(cfg);
    const ProfileTable bl = integrate_boundary_layer(c, g, cfg.profile);
    const ProfileTable sh = integrate_shock(c, g, cfg.profile);
    const RarefactionEvaluator re(c, g, cfg.profile.newton_tol);

    {
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const double t = cfg.t_end * k / 49.0;
            const RarefactionSample s = re.eval(t, 0.0);
            worst = std::max(worst, std::hypot(s.v - c.u_star.v, s.u - c.u_star.u));
        }
        rep.add("rarefaction boundary value equals U_* (50 times)", worst, "<", 1e-10);
    }
    if (c.has_boundary_layer()) {
        rep.add("BL ODE residual", bl.ode_residual(), "<", 1e-8);
        double line = 0.0;
        bool mono = true;
        for (std::size_t i = 0; i < bl.xi.size(); ++i) {
            line = std::max(line, std::abs(bl.u[i] / bl.v[i] + c.sigma_minus));
            if (i && !(bl.dev_right[i] < bl.dev_right[i - 1])) mono = false;
        }
        rep.add("BL first integral u/v = -sigma_-", line, "<", 1e-10);
        rep.add("BL monotone", mono ? 1.0 : 0.0, "==", 1.0);
        const double lo = 10.0 / c.delta_bl, hi = 1000.0 / c.delta_bl;
        const BoundaryLayerDecay d = fit_boundary_layer_decay(bl, c.delta_bl, lo, hi);
        rep.fitted["bl_exponents"] = {d.k0, d.k1, d.k2};
        rep.add("BL tail exponent (value) within 15% of 1", std::abs(d.k0 - 1.0), "<=", 0.15);
        rep.add("BL tail exponent (first derivative) within 15% of 2", std::abs(d.k1 - 2.0) / 2.0, "<=", 0.15);
        rep.add("BL tail exponent (second derivative) within 15% of 3", std::abs(d.k2 - 3.0) / 3.0, "<=", 0.15);
        double outer_lo = 1e300, outer_hi = 0.0;
        for (int k = 0; k <= 400; ++k) {
            const double xi = 0.5 * hi + 0.5 * hi * k / 400.0;
            const double q = bl.sample(xi).dev_right * (1.0 + c.delta_bl * xi) / c.delta_bl;
            outer_lo = std::min(outer_lo, q);
            outer_hi = std::max(outer_hi, q);
        }
        rep.add("BL (v_*-v)(1+d xi)/d varies < 5x on the outer half", outer_hi / outer_lo, "<", 5.0);
    }
    if (c.has_shock()) {
        rep.add("shock ODE residual", sh.ode_residual(), "<", 1e-8);
        const auto [r1, r2] = rankine_hugoniot_residuals(c.u_mid, c.u_plus, c.sigma, g);
        rep.add("Rankine-Hugoniot residuals", std::max(std::abs(r1), std::abs(r2)), "<", 1e-12);
        double hug = 0.0;
        bool mono = true;
        for (std::size_t i = 0; i < sh.xi.size(); ++i) {
            hug = std::max(hug, std::abs(sh.u[i] - (c.u_mid.u - c.sigma * (sh.v[i] - c.u_mid.v))));
            if (!(sh.v_xi[i] > 0.0 || sh.dev_left[i] == 0.0 || sh.dev_right[i] == 0.0)) mono = false;
            if (i && !(sh.dev_left[i] >= sh.dev_left[i - 1] && sh.dev_right[i] <= sh.dev_right[i - 1])) mono = false;
        }
        rep.add("shock first integral u = u^* - sigma (v - v^*)", hug, "<", 1e-10);
        rep.add("shock monotone (v increasing, u decreasing)", mono ? 1.0 : 0.0, "==", 1.0);
        const ShockRates k = shock_endpoint_rates(c, g);
        const double kmin = std::min(k.left, k.right);
        const ShockDecay d = fit_shock_decay(sh, 5.0 / kmin, 30.0 / kmin);
        rep.fitted["shock_rates"] = {{"fitted", {d.left, d.right}}, {"linearization", {k.left, k.right}}};
        rep.add("shock left tail rate within 20% of linearization", std::abs(d.left / k.left - 1.0), "<=", 0.2);
        rep.add("shock right tail rate within 20% of linearization", std::abs(d.right / k.right - 1.0), "<=", 0.2);
        CompositeField f(c, g, bl, sh, re);
        const std::vector<double> xi0 = {0.0};
        rep.add("y0 < 1/4", f.y_transform(0.0, xi0).y0, "<", 0.25);
        double amin = 1e300, amax = -1e300, axmin = 1e300;
        const double span = 2.0 * c.beta;
        for (int i = 0; i < 10000; ++i) {
            const WeightSample w = f.weight(0.0, span * i / 9999.0);
            amin = std::min(amin, w.a);
            amax = std::max(amax, w.a);
            axmin = std::min(axmin, w.a_x);
        }
        rep.add("weight a >= 1", amin, ">=", 1.0);
        rep.add("weight a <= 1 + sqrt(delta_S)", amax - (1.0 + std::sqrt(c.delta_s)), "<=", 0.0);
        rep.add("weight a_xi > 0 on 1e4 points", axmin, ">", 0.0);
    }
    return rep;
}

// ---------------------------------------------------------------- interactions

namespace {

// Evaluates the interactions at every time on a few threads; each
// evaluation is a pure function of (t, field), so the result is deterministic.
std::vector<Interactions> interactions_at(const CompositeField& f, const std::vector<double>& times,
                                          double tol) {
    std::vector<Interactions> out(times.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < times.size();) out[i] = wave_interactions(times[i], f, tol);
    };
    const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    {
        std::vector<std::jthread> pool;
        for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
        work();
    }
    return out;
}

}  // namespace

InteractionSeries sample_interactions(const CompositeField& f, const std::vector<double>& times,
                                      double tol) {
    InteractionSeries s;
    const std::vector<Interactions> all = interactions_at(f, times, tol);
    for (std::size_t i = 0; i < times.size(); ++i) {
        s.t.push_back(times[i]);
        s.i1.push_back(all[i].i1);
        s.i2.push_back(all[i].i2);
        s.i3.push_back(all[i].i3);
        s.l2.push_back(all[i].l2);
    }
    return s;
}

double interaction_l2_time_integral(const CompositeField& f, double t_max, double tol) {
    std::vector<double> ts = {0.0};
    for (double t = 0.25; t < t_max; t *= std::sqrt(2.0)) ts.push_back(t);
    ts.push_back(t_max);
    const std::vector<Interactions> all = interactions_at(f, ts, tol);
    double total = 0.0;
    for (std::size_t i = 1; i < ts.size(); ++i) total += 0.5 * (ts[i] - ts[i - 1]) * (all[i].l2 + all[i - 1].l2);
    return total;
}

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

}  // namespace

VerifyReport verify_interactions(const RunConfig& cfg, std::uint64_t seed) {
    VerifyReport rep;
    rep.suite = "interactions";
    rep.seed = seed;
    const GasParams& g = cfg.gas;
    const WaveChart c = resolve_chart(cfg);
    const CompositeField f(c, g, cfg.profile);
    const double tol = cfg.frame.interaction_tol;

    const double unit = c.has_shock() ? 1.0 / c.delta_s : 1.0;
    std::vector<double> times;
    for (int k = 0; k <= 10; ++k) times.push_back(10.0 * k * unit);
    const InteractionSeries s = sample_interactions(f, times, tol);
    const InteractionSeries s2 = sample_interactions(f, times, tol * 1e-2);

    double neg = 0.0, agree = 0.0;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        neg = std::min({neg, s.i1[i], s.i2[i], s.i3[i], s.l2[i]});
        auto rel = [](double a, double b) { return b != 0.0 ? std::abs(a - b) / std::abs(b) : std::abs(a); };
        agree = std::max({agree, rel(s.i1[i], s2.i1[i]), rel(s.i2[i], s2.i2[i]), rel(s.i3[i], s2.i3[i]),
                          rel(s.l2[i], s2.l2[i])});
    }
    rep.add("I1, I2, I3, ||R||^2 >= 0", neg, ">=", 0.0);
    rep.add("quadrature agrees at tol and tol/100 (relative)", agree, "<", 1e-6);

    ojson series;
    series["t"] = s.t;
    series["I1"] = s.i1;
    series["I2"] = s.i2;
    series["I3"] = s.i3;
    series["L2"] = s.l2;
    rep.fitted["series"] = series;

    const double dbl = c.delta_bl, dr = c.delta_r, ds = c.delta_s;
    if (c.has_boundary_layer() && c.has_rarefaction()) {
        const EnvelopeFit e = fit_envelope(s.t, s.i1, [&](double k, double t) {
            return std::pow(dr, 0.125) * std::log1p(dbl * t) / std::pow(1.0 + t, k) + dbl * dr / (1.0 + dbl * t);
        }, -2.0, 5.0);
        rep.fitted["I1"] = {{"c", e.c}, {"C", e.amplitude}, {"C_envelope", e.envelope}, {"rms_log", e.rms_log}};
        rep.add("I1 fitted decay exponent c > 0", e.c, ">", 0.0, {{"at_search_bound", e.at_bound}});
    }
    if (c.has_boundary_layer() && c.has_shock()) {
        const EnvelopeFit e = fit_envelope(s.t, s.i2, [&](double k, double t) {
            return dbl * ds * std::exp(-k * ds * t) + dbl * ds / (1.0 + dbl * t);
        }, -2.0, 20.0);
        rep.fitted["I2"] = {{"c", e.c}, {"C", e.amplitude}, {"C_envelope", e.envelope}, {"rms_log", e.rms_log}};
        rep.add("I2 fitted decay rate c > 0", e.c, ">", 0.0, {{"at_search_bound", e.at_bound}});
        rep.add("I2 time integral over the sampled horizon finite", trapezoid(s.t, s.i2), "<",
                std::numeric_limits<double>::infinity());
    }
    if (c.has_rarefaction() && c.has_shock()) {
        const EnvelopeFit e = fit_envelope(s.t, s.i3, [&](double k, double t) {
            return dr * ds * std::exp(-k * ds * t) + dr * ds * std::exp(-k * t);
        }, -2.0, 20.0);
        rep.fitted["I3"] = {{"c", e.c}, {"C", e.amplitude}, {"C_envelope", e.envelope}, {"rms_log", e.rms_log}};
        rep.add("I3 fitted decay rate c > 0", e.c, ">", 0.0, {{"at_search_bound", e.at_bound}});
        rep.add("I3 time integral over the sampled horizon finite", trapezoid(s.t, s.i3), "<",
                std::numeric_limits<double>::infinity());
    }

    // delta_R = 0 degeneration of the same chart
    {
        RunConfig flat = cfg;
        flat.chart.v_mid = c.u_star.v;
        flat.chart.delta_r.reset();
        flat.chart.v_plus.reset();
        flat.chart.delta_s = c.delta_s;
        const WaveChart c10 = resolve_chart(flat);
        const CompositeField f10(c10, g, cfg.profile);
        double worst = 0.0;
        for (double t : {0.0, 10.0 * unit, 100.0 * unit}) {
            const Interactions in = wave_interactions(t, f10, tol);
            worst = std::max({worst, std::abs(in.i1), std::abs(in.i3)});
        }
        rep.add("delta_R = 0 chart: I1 = I3 = 0", worst, "==", 0.0);
    }

    // int ||R||^2 dt under halving of (delta_R, delta_S)
    if (c.has_rarefaction() && c.has_shock()) {
        const double horizon = 1e4;
        std::vector<double> d0, integral;
        for (int k = 0; k < 3; ++k) {
            RunConfig h = cfg;
            h.chart.v_mid.reset();
            h.chart.v_plus.reset();
            h.chart.beta.reset();
            h.chart.delta_r = c.delta_r / std::pow(2.0, k);
            h.chart.delta_s = c.delta_s / std::pow(2.0, k);
            const WaveChart ck = resolve_chart(h);
            const CompositeField fk(ck, g, cfg.profile);
            d0.push_back(ck.delta_r + ck.delta_s);
            integral.push_back(interaction_l2_time_integral(fk, horizon, tol));
        }
        rep.fitted["R_L2_time_integral"] = {{"delta0", d0}, {"integral", integral}, {"horizon", horizon}};
        bool finite = std::all_of(integral.begin(), integral.end(), [](double x) { return std::isfinite(x); });
        rep.add("int ||R||^2 dt finite for every chart", finite ? 1.0 : 0.0, "==", 1.0);
        const double worst_step = std::max(integral[1] / integral[0], integral[2] / integral[1]);
        rep.add("int ||R||^2 dt decreases under delta halving (max ratio)", worst_step, "<", 1.0);
    }
    return rep;
}

// ---------------------------------------------------------------- simulate-short

VerifyReport verify_simulate_short(const RunConfig& cfg, std::uint64_t seed) {
    VerifyReport rep;
    rep.suite = "simulate-short";
    rep.seed = seed;
    RunConfig short_cfg = cfg;
    short_cfg.t_end = std::min(cfg.t_end, 10.0);
    short_cfg.diag_interval = 1.0;
    short_cfg.snapshot_interval = -1.0;
    short_cfg.frame.interactions = false;
    SimulationSetup setup = make_setup(short_cfg);
    // keep the domain sized for the full horizon so the boundary data match
    setup.grid.length = resolve_length(cfg, setup.chart);

    CompositeField field(setup.chart, setup.gas, setup.profile);
    double left_err = 0.0;
    SimulationHooks hooks;
    const SimulationResult r1 = run_simulation(setup, field, hooks);
    const SimulationResult r2 = run_simulation(setup, field, hooks);

    rep.add("run completes without abort", r1.summary.aborted ? 1.0 : 0.0, "==", 0.0,
            {{"reason", r1.summary.abort_reason}});
    left_err = std::max(std::abs(r1.final_state.v.front() - setup.chart.u_minus.v),
                        std::abs(r1.final_state.u.front() - setup.chart.u_minus.u));
    rep.add("left boundary equals U- exactly", left_err, "==", 0.0);

    double most_negative = 0.0, poincare = 0.0;
    for (const DiagnosticsFrame& fr : r1.frames) {
        most_negative = std::min({most_negative, fr.rel_entropy, fr.weighted_rel_entropy, fr.g_s, fr.g_1,
                                  fr.g_2, fr.g_bl, fr.g_r, fr.g_v, fr.d_v1, fr.d_u1, fr.d_u2});
        if (fr.poincare_rhs > 0.0) poincare = std::max(poincare, fr.poincare_lhs / fr.poincare_rhs);
    }
    rep.add("all G, D and entropy functionals >= 0", most_negative, ">=", 0.0);
    rep.add("Poincare on the solution: max lhs/rhs", poincare, "<=", 1.0 + 1e-8);
    rep.add("J4 = 0 at t = 0", std::abs(r1.frames.front().j_bd[3]), "==", 0.0);
    {
        const SolverState s0 = initial_data(field, setup.perturbation, setup.grid);
        std::vector<CompositeSample> bar;
        field.eval_grid(0.0, setup.grid.nodes(), bar);
        std::vector<double> pv(s0.v.size()), pu(s0.u.size());
        for (std::size_t i = 0; i < pv.size(); ++i) {
            pv[i] = s0.v[i] - bar[i].v;
            pu[i] = s0.u[i] - bar[i].u;
        }
        const double eps = setup.perturbation.eps0;
        const double h1 = discrete_h1_norm(pv, pu, setup.grid.dx());
        rep.add("initial H1 norm of the perturbation equals eps0 (relative)", std::abs(h1 - eps) / eps, "<", 1e-12,
                {{"frame_h1_centered", std::sqrt(r1.frames.front().h1_sq)}});
    }

    bool identical = r1.frames.size() == r2.frames.size();
    for (std::size_t i = 0; identical && i < r1.frames.size(); ++i) {
        identical = r1.frames[i].values() == r2.frames[i].values();
    }
    rep.add("rerun is bit-identical", identical ? 1.0 : 0.0, "==", 1.0);

    SimulationSetup zero = setup;
    zero.perturbation.eps0 = 0.0;
    zero.t_end = std::min(setup.t_end, 0.5);
    const SimulationResult r0 = run_simulation(zero, field, hooks);
    const DiagnosticsFrame& f0 = r0.frames.front();
    rep.add("zero perturbation: functionals vanish at t = 0",
            std::max({f0.sup_perturbation, f0.rel_entropy, f0.g_val, std::abs(f0.xdot)}), "==", 0.0);
    rep.fitted["summary"] = {{"sup_ratio", r1.summary.sup_ratio},
                             {"xdot_max", r1.summary.xdot_max},
                             {"steps", r1.summary.steps}};
    return rep;
}

}  // namespace wavelab
