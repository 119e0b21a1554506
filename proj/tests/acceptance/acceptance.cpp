// Acceptance battery: one line per criterion, exit status 0 iff all pass.
//
// usage: wavelab_acceptance <presets-dir> [criterion ...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "../common/manufactured.hpp"
#include "wavelab/config.hpp"
#include "wavelab/fit.hpp"
#include "wavelab/sweep.hpp"
#include "wavelab/verify.hpp"

using namespace wavelab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const Check& find(const VerifyReport& r, const std::string& prefix) {
    for (const Check& c : r.checks) {
        if (c.name.rfind(prefix, 0) == 0) return c;
    }
    throw std::runtime_error("no check named '" + prefix + "' in suite " + r.suite);
}

// Checks of `r` whose names start with one of the prefixes.
Outcome from_checks(const VerifyReport& r, const std::vector<std::string>& prefixes) {
    Outcome o{true, ""};
    for (const std::string& p : prefixes) {
        const Check& c = find(r, p);
        o.pass = o.pass && c.pass;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += fmt("%s %.3g%s%.3g", c.name.c_str(), c.measured, c.relation.c_str(), c.threshold);
    }
    return o;
}

struct MainRuns {
    bool done = false;
    SimulationResult coarse, fine;
};

fs::path g_presets;
MainRuns g_main;

const MainRuns& main_runs() {
    if (!g_main.done) {
        for (auto [name, slot] : {std::pair{"default.json", &g_main.coarse}, std::pair{"main_n8000.json", &g_main.fine}}) {
            RunConfig cfg = load_config(g_presets / name);
            cfg.frame.interactions = false;
            cfg.snapshot_interval = -1.0;
            *slot = run_simulation(make_setup(cfg));
        }
        g_main.done = true;
    }
    return g_main;
}

Outcome criterion1() {
    return from_checks(verify_profiles(load_config(g_presets / "default.json"), 0),
                       {"rarefaction boundary value"});
}

Outcome criterion2() {
    return from_checks(verify_profiles(load_config(g_presets / "default.json"), 0),
                       {"shock ODE residual", "BL ODE residual", "Rankine-Hugoniot", "BL first integral",
                        "shock first integral"});
}

Outcome criterion3() {
    return from_checks(verify_profiles(load_config(g_presets / "default.json"), 0),
                       {"BL tail exponent (value)", "BL tail exponent (first", "BL tail exponent (second",
                        "shock left tail rate", "shock right tail rate"});
}

Outcome criterion4() {
    const RunConfig cfg = load_config(g_presets / "default.json");
    const VerifyReport r = verify_gas(cfg, cfg.seed);
    long fams = 0;
    for (const Check& c : r.checks) fams += c.name.rfind("(", 0) == 0;
    return {r.passed() && cfg.verify.samples >= 100000,
            fmt("%ld inequality checks on %ld fresh pairs each, %s", fams, cfg.verify.samples,
                r.passed() ? "zero violations" : "violations present")};
}

Outcome criterion5() {
    const RunConfig cfg = load_config(g_presets / "default.json");
    const VerifyReport r = verify_poincare(cfg, cfg.seed);
    Outcome o = from_checks(r, {"random polynomials", "f(y) = y"});
    o.pass = o.pass && cfg.verify.polynomials >= 1000;
    return o;
}

Outcome criterion6() {
    using testing::Manufactured;
    const Manufactured m;
    const double L = 2.0 * std::numbers::pi;
    std::vector<double> lx, le;
    for (int n : {50, 100, 200, 400}) {
        const double dx = L / n;
        const SolverState s = m.run(L, n, 0.05 * dx * dx, 0.5);
        lx.push_back(std::log(dx));
        le.push_back(std::log(m.max_error(s, L)));
    }
    const double p_space = fit_line(lx, le).slope;

    Manufactured mt;
    mt.k = 2.0 * std::numbers::pi / 10.0;
    mt.w = 0.5;
    const SolverState a = mt.run(20.0, 40, 0.08, 4.0), b = mt.run(20.0, 40, 0.04, 4.0),
                      c = mt.run(20.0, 40, 0.02, 4.0);
    const double p_time = std::log2(testing::max_difference(a, b) / testing::max_difference(b, c));
    return {std::abs(p_space - 2.0) <= 0.1 && p_time >= 3.7,
            fmt("spatial order %.4f (2.0 +/- 0.1), temporal order %.4f (>= 3.7)", p_space, p_time)};
}

Outcome criterion7() {
    const GasParams g{5.0 / 3.0};
    const State c{1.0, 1.0};
    const Grid grid{100.0, 400};
    const InflowSolver solver(grid, g, -c.u / c.v, constant_boundary(c), constant_boundary(c));
    SolverState s;
    s.v.assign(grid.size(), c.v);
    s.u.assign(grid.size(), c.u);
    const double dt = solver.stable_dt(s.v);
    for (int k = 0; k < 1000; ++k) solver.step(s, dt);
    double drift = 0.0;
    for (int i = 0; i < grid.size(); ++i) drift = std::max({drift, std::abs(s.v[i] - c.v), std::abs(s.u[i] - c.u)});
    return {drift < 1e-12, fmt("max drift %.3g after 1000 steps (< 1e-12)", drift)};
}

Outcome criterion8() {
    const MainRuns& m = main_runs();
    const SimulationSummary& a = m.coarse.summary;
    const SimulationSummary& b = m.fine.summary;
    const bool sup_ok = a.sup_ratio < 0.2;
    const bool trend_ok = a.xdot_trend_ratio < 0.2;
    const bool shift_ok = a.x_over_t < 0.1 * a.xdot_max;
    const double agree_sup = std::abs(a.sup_ratio / b.sup_ratio - 1.0);
    const double agree_trend = std::abs(a.xdot_trend_ratio / b.xdot_trend_ratio - 1.0);
    const bool agree = agree_sup < 0.1 && agree_trend < 0.1;
    return {!a.aborted && !b.aborted && sup_ok && trend_ok && shift_ok && agree,
            fmt("sup ratio %.4g (< 0.2); Xdot trend ratio %.4g (< 0.2); |X|/t %.3g vs 0.1 max|Xdot| %.3g; "
                "N=4000 vs 8000 ratio mismatch %.3g, %.3g (< 0.1)",
                a.sup_ratio, a.xdot_trend_ratio, a.x_over_t, 0.1 * a.xdot_max, agree_sup, agree_trend)};
}

Outcome criterion9() {
    const RunConfig cfg = load_config(g_presets / "default.json");
    const VerifyReport r = verify_interactions(cfg, cfg.seed);
    const auto& f = r.fitted;
    return {r.passed(), fmt("c1 %.4g, c2 %.4g, c3 %.4g; halving ratio %.3g; %zu checks %s",
                            f["I1"]["c"].get<double>(), f["I2"]["c"].get<double>(), f["I3"]["c"].get<double>(),
                            find(r, "int ||R||^2 dt decreases").measured, r.checks.size(),
                            r.passed() ? "pass" : "with failures")};
}

Outcome criterion10() {
    const SimulationSummary& a = main_runs().coarse.summary;
    return {a.g_last_decile_fraction < 0.05 && a.g_prime_last_decile_fraction < 0.05,
            fmt("last-decile share of int|g| %.4g, of int|g'| %.4g (< 0.05)", a.g_last_decile_fraction,
                a.g_prime_last_decile_fraction)};
}

Outcome criterion11() {
    const RunConfig cfg = load_config(g_presets / "sweep_apriori.json");
    const std::vector<SweepRow> rows = run_sweep(cfg);
    bool finite = rows.size() == 9;
    double lo = INFINITY, hi = 0.0;
    for (const SweepRow& r : rows) {
        finite = finite && r.status == "ok" && std::isfinite(r.lhs) && r.c0 > 0.0;
        lo = std::min(lo, r.c0);
        hi = std::max(hi, r.c0);
    }
    return {finite && hi / lo <= 3.0,
            fmt("%zu runs, lhs finite: %s, C0 in [%.4g, %.4g], spread %.3g (<= 3)", rows.size(),
                finite ? "yes" : "no", lo, hi, hi / lo)};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <presets-dir> [criterion ...]\n", argv[0]);
        return 2;
    }
    g_presets = argv[1];
    std::set<int> only;
    for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));

    const std::vector<Criterion> all = {
        {1, "rarefaction boundary exactness", 1.0, criterion1},
        {2, "profile residuals", 5.0, criterion2},
        {3, "decay shapes", 10.0, criterion3},
        {4, "relative quantity inequalities", 5.0, criterion4},
        {5, "weighted Poincare inequality", 5.0, criterion5},
        {6, "manufactured-solution convergence", 120.0, criterion6},
        {7, "constant-state preservation", 10.0, criterion7},
        {8, "main convergence run", 600.0, criterion8},
        {9, "wave-interaction decay", 120.0, criterion9},
        {10, "g plateau", 600.0, criterion10},
        {11, "a-priori inequality shape", 1800.0, criterion11},
    };
    bool ok = true;
    for (const Criterion& c : all) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = secs < c.budget_s;
        const bool pass = o.pass && in_budget;
        ok = ok && pass;
        std::printf("criterion %2d %s  %s: %s [%.1f s, budget %.0f s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), secs, c.budget_s);
        std::fflush(stdout);
    }
    return ok ? 0 : 1;
}
