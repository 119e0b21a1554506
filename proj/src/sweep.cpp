#include "wavelab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <tuple>
#include <mutex>
#include <thread>

#include "wavelab/io.hpp"

namespace wavelab {

std::vector<SweepPoint> expand_sweep(const SweepAxes& axes) {
    std::vector<SweepPoint> pts(1);
    auto extend = [&pts](const auto& values, auto setter) {
        if (values.empty()) return;
        std::vector<SweepPoint> next;
        for (const SweepPoint& p : pts) {
            for (const auto& v : values) {
                SweepPoint q = p;
                setter(q, v);
                next.push_back(q);
            }
        }
        pts = std::move(next);
    };
    extend(axes.eps0, [](SweepPoint& p, double v) { p.eps0 = v; });
    extend(axes.delta_s, [](SweepPoint& p, double v) { p.delta_s = v; });
    extend(axes.beta, [](SweepPoint& p, double v) { p.beta = v; });
    extend(axes.cells, [](SweepPoint& p, int v) { p.cells = v; });
    return pts;
}

RunConfig apply_point(const RunConfig& base, const SweepPoint& p) {
    RunConfig c = base;
    c.sweep = {};
    if (p.eps0) c.perturbation.eps0 = *p.eps0;
    if (p.delta_s) {
        c.chart.v_plus.reset();
        c.chart.delta_s = *p.delta_s;
        c.chart.beta.reset();
    }
    if (p.beta) c.chart.beta = *p.beta;
    if (p.cells) {
        c.cells = *p.cells;
    } else if (!c.length) {
        const double dx = resolve_length(base, resolve_chart(base)) / base.cells;
        c.cells = static_cast<int>(std::lround(resolve_length(c, resolve_chart(c)) / dx));
    }
    return c;
}

const std::vector<std::string>& SweepRow::column_names() {
    static const std::vector<std::string> names = {
        "index", "status", "message", "eps0", "delta_r", "delta_s", "beta", "length", "cells",
        "t_end", "steps", "sup_initial", "sup_final", "sup_ratio", "xdot_trend_ratio", "xdot_max",
        "x_final", "x_over_t", "g_integral", "g_prime_integral", "g_last_decile_fraction",
        "g_prime_last_decile_fraction", "jbd_integral", "initial_h1_sq", "sup_h1_sq",
        "dissipation_integral", "poincare_worst", "y0", "boundary_gap", "lhs", "bracket", "C0"};
    return names;
}

std::vector<std::string> SweepRow::fields() const {
    const SimulationSummary& s = summary;
    std::vector<std::string> f = {std::to_string(index), status, message};
    for (double x : {eps0, delta_r, delta_s, beta, length}) f.push_back(format_double(x));
    f.push_back(std::to_string(cells));
    f.push_back(format_double(s.t_end));
    f.push_back(std::to_string(s.steps));
    for (double x : {s.sup_initial, s.sup_final, s.sup_ratio, s.xdot_trend_ratio, s.xdot_max, s.x_final,
                     s.x_over_t, s.g_integral, s.g_prime_integral, s.g_last_decile_fraction,
                     s.g_prime_last_decile_fraction, s.jbd_integral, s.initial_h1_sq, s.sup_h1_sq,
                     s.dissipation_integral, s.poincare_worst, y0, boundary_gap, lhs, bracket, c0}) {
        f.push_back(format_double(x));
    }
    return f;
}

SweepRow make_row(const RunConfig& cfg, const SimulationSetup& setup, const CompositeField& field,
                  const SimulationResult& result) {
    SweepRow r;
    const WaveChart& c = setup.chart;
    r.status = result.summary.aborted ? "aborted" : "ok";
    r.message = result.summary.abort_reason;
    r.eps0 = cfg.perturbation.eps0;
    r.delta_r = c.delta_r;
    r.delta_s = c.delta_s;
    r.beta = c.beta;
    r.length = setup.grid.length;
    r.cells = setup.grid.cells;
    r.summary = result.summary;
    const std::vector<double> xi0 = {0.0};
    r.y0 = c.has_shock() ? field.y_transform(0.0, xi0).y0 : 0.0;
    const CompositeSample b = field.eval(0.0, 0.0);
    r.boundary_gap = std::hypot(c.u_minus.v - b.v, c.u_minus.u - b.u);
    r.lhs = result.summary.sup_h1_sq + result.summary.dissipation_integral;
    const double delta0 = c.delta_r + c.delta_s;
    r.bracket = result.summary.initial_h1_sq + std::pow(delta0, 1.0 / 6.0) +
                (c.has_shock() ? std::exp(-c.delta_s * c.beta) : 0.0);
    r.c0 = r.bracket > 0.0 ? r.lhs / r.bracket : 0.0;
    r.final_state = result.final_state;
    return r;
}

std::vector<GridComparison> compare_resolutions(const std::vector<SweepRow>& rows) {
    std::map<std::tuple<double, double, double>, std::vector<const SweepRow*>> groups;
    for (const SweepRow& r : rows) {
        if (r.status == "ok" && !r.final_state.v.empty()) groups[{r.eps0, r.delta_s, r.beta}].push_back(&r);
    }
    std::vector<GridComparison> out;
    for (auto& [key, g] : groups) {
        std::sort(g.begin(), g.end(), [](const SweepRow* a, const SweepRow* b) { return a->cells < b->cells; });
        std::vector<GridComparison> local;
        for (std::size_t k = 0; k + 1 < g.size(); ++k) {
            const SweepRow& a = *g[k];
            const SweepRow& b = *g[k + 1];
            if (a.length != b.length || a.cells <= 0 || b.cells % a.cells != 0) continue;
            const int r = b.cells / a.cells;
            double d = 0.0;
            for (int i = 0; i <= a.cells; ++i) {
                d = std::max({d, std::abs(a.final_state.v[i] - b.final_state.v[i * r]),
                              std::abs(a.final_state.u[i] - b.final_state.u[i * r])});
            }
            GridComparison c{std::get<0>(key), std::get<1>(key), std::get<2>(key), a.cells, b.cells, d,
                             std::nan("")};
            if (!local.empty() && local.back().fine == a.cells && r == 2 && local.back().coarse * 2 == a.cells) {
                c.order = std::log2(local.back().difference / d);
            }
            local.push_back(c);
        }
        out.insert(out.end(), local.begin(), local.end());
    }
    return out;
}

unsigned sweep_threads(std::size_t jobs) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WAVE_LAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) n = static_cast<unsigned>(v);
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

std::vector<SweepRow> run_sweep(const RunConfig& base, const std::function<void(const SweepRow&)>& on_row) {
    const std::vector<SweepPoint> pts = expand_sweep(base.sweep);
    std::vector<SweepRow> rows(pts.size());
    std::atomic<std::size_t> next{0};
    std::mutex lock;

    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < pts.size();) {
            SweepRow row;
            try {
                const RunConfig cfg = apply_point(base, pts[i]);
                const SimulationSetup setup = make_setup(cfg);
                CompositeField field(setup.chart, setup.gas, setup.profile);
                const SimulationResult res = run_simulation(setup, field);
                row = make_row(cfg, setup, field, res);
            } catch (const std::exception& e) {
                row.status = "error";
                row.message = e.what();
                if (pts[i].eps0) row.eps0 = *pts[i].eps0;
                if (pts[i].delta_s) row.delta_s = *pts[i].delta_s;
                if (pts[i].beta) row.beta = *pts[i].beta;
                if (pts[i].cells) row.cells = *pts[i].cells;
            }
            row.index = i;
            row.point = pts[i];
            std::lock_guard<std::mutex> g(lock);
            rows[i] = row;
            if (on_row) on_row(rows[i]);
        }
    };
    const unsigned n = sweep_threads(pts.size());
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
    work();
    pool.clear();
    return rows;
}

}  // namespace wavelab
