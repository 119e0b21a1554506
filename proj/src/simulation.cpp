#include "wavelab/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "wavelab/errors.hpp"

namespace wavelab {

namespace {

struct ShockWindow {
    std::size_t lo = 0;
    std::size_t hi = 0;  // exclusive
};

ShockWindow shock_window(const CompositeField& f, double t, const Grid& grid, double reach) {
    const std::size_t n = static_cast<std::size_t>(grid.size());
    const WaveChart& c = f.chart();
    const double centre = (c.sigma - c.sigma_minus) * t + f.shift() + c.beta;
    const double dx = grid.dx();
    const double a = std::floor((centre - reach) / dx);
    const double b = std::ceil((centre + reach) / dx) + 1.0;
    ShockWindow w;
    w.lo = static_cast<std::size_t>(std::clamp(a, 0.0, double(n)));
    w.hi = static_cast<std::size_t>(std::clamp(b, 0.0, double(n)));
    return w;
}

double window_mean(const std::vector<ShiftRecord>& rec, double t_end, double a, double b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        const double t0 = rec[i].t;
        const double t1 = i + 1 < rec.size() ? rec[i + 1].t : t_end;
        const double lo = std::max(t0, a);
        const double hi = std::min(t1, b);
        if (hi <= lo) continue;
        num += std::abs(rec[i].xdot) * (hi - lo);
        den += hi - lo;
    }
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace

SimulationSummary summarize(const std::vector<DiagnosticsFrame>& frames,
                            const std::vector<ShiftRecord>& shift, double t_end, double delta_s) {
    SimulationSummary s;
    s.t_end = t_end;
    if (!frames.empty()) {
        s.sup_initial = frames.front().sup_perturbation;
        s.sup_final = frames.back().sup_perturbation;
        s.sup_ratio = s.sup_initial > 0.0 ? s.sup_final / s.sup_initial : 0.0;
        s.initial_h1_sq = frames.front().h1_sq;
        s.x_final = frames.back().shift;
    }
    const double t_last = frames.empty() ? t_end : frames.back().t;
    s.x_over_t = t_last > 0.0 ? std::abs(s.x_final) / t_last : 0.0;
    s.xdot_first_mean = window_mean(shift, t_last, 0.0, 0.1 * t_last);
    s.xdot_last_mean = window_mean(shift, t_last, 0.9 * t_last, t_last);
    s.xdot_trend_ratio = s.xdot_first_mean > 0.0 ? s.xdot_last_mean / s.xdot_first_mean : 0.0;
    for (const ShiftRecord& r : shift) s.xdot_max = std::max(s.xdot_max, std::abs(r.xdot));

    double g_late = 0.0, gp_late = 0.0;
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const DiagnosticsFrame& f = frames[k];
        s.sup_h1_sq = std::max(s.sup_h1_sq, f.h1_sq);
        if (f.poincare_rhs > 0.0) s.poincare_worst = std::max(s.poincare_worst, f.poincare_lhs / f.poincare_rhs);
        if (k == 0) continue;
        const DiagnosticsFrame& p = frames[k - 1];
        const double h = f.t - p.t;
        const double gi = 0.5 * h * (std::abs(f.g_val) + std::abs(p.g_val));
        const double gpi = std::abs(f.g_val - p.g_val);
        s.g_integral += gi;
        s.g_prime_integral += gpi;
        if (p.t >= 0.9 * t_last - 1e-12 * t_last) {
            g_late += gi;
            gp_late += gpi;
        }
        auto jsum = [](const DiagnosticsFrame& q) {
            return std::abs(q.j_bd[0] + q.j_bd[1] + q.j_bd[2] + q.j_bd[3] + q.j_bd[4]);
        };
        s.jbd_integral += 0.5 * h * (jsum(f) + jsum(p));
        auto diss = [delta_s](const DiagnosticsFrame& q) {
            return delta_s * q.xdot_sq + q.g_s + q.g_v + q.d_v + q.d_u1_plain + q.d_u2_plain;
        };
        s.dissipation_integral += 0.5 * h * (diss(f) + diss(p));
    }
    s.g_last_decile_fraction = s.g_integral > 0.0 ? g_late / s.g_integral : 0.0;
    s.g_prime_last_decile_fraction = s.g_prime_integral > 0.0 ? gp_late / s.g_prime_integral : 0.0;
    return s;
}

SimulationResult run_simulation(const SimulationSetup& setup, const SimulationHooks& hooks) {
    CompositeField field(setup.chart, setup.gas, setup.profile);
    return run_simulation(setup, field, hooks);
}

SimulationResult run_simulation(const SimulationSetup& setup, CompositeField& field,
                                const SimulationHooks& hooks) {
    if (!(setup.t_end > 0.0)) throw PreconditionError("t_end must be positive");
    if (setup.diag_interval < 0.0) throw PreconditionError("diagnostic interval must be >= 0");
    const Grid& grid = setup.grid;
    grid.validate();
    const WaveChart& chart = field.chart();
    field.set_shift(0.0);

    SimulationResult res;
    SolverState state = initial_data(field, setup.perturbation, grid);
    InflowSolver solver(grid, field.gas(), chart.sigma_minus, constant_boundary(chart.u_minus),
                        composite_boundary(field, grid.length), setup.solver);
    const bool with_shift = chart.has_shock();
    const ShiftParams sp = with_shift ? make_shift_params(chart, field.gas()) : ShiftParams{};
    ShiftIntegrator integrator(shift_blowup_limit(chart));
    double reach = 0.0;
    if (with_shift) {
        const ShockRates k = shock_endpoint_rates(chart, field.gas());
        reach = 40.0 / std::min(k.left, k.right);
    }

    const std::vector<double> xi = grid.nodes();
    const double dx = grid.dx();
    std::vector<CompositeSample> bar;

    auto full_xdot = [&](const std::vector<CompositeSample>& b) {
        return with_shift ? xdot(state.u, b, field, sp, dx) : 0.0;
    };
    auto emit_frame = [&]() {
        field.eval_grid(state.t, xi, bar);
        const DiagnosticsFrame fr = compute_frame(state, bar, field, full_xdot(bar), dx, setup.frame);
        res.frames.push_back(fr);
        if (hooks.on_frame) hooks.on_frame(fr);
    };
    auto emit_snapshot = [&]() {
        if (!hooks.on_snapshot) return;
        field.eval_grid(state.t, xi, bar);
        hooks.on_snapshot(state, bar, dx);
    };

    const double t_end = setup.t_end;
    const double diag_step = setup.diag_interval > 0.0 ? setup.diag_interval : t_end;
    const bool snapshots = setup.snapshot_interval >= 0.0;
    const double snap_step = setup.snapshot_interval > 0.0 ? setup.snapshot_interval : t_end;
    long diag_k = 1, snap_k = 1;
    auto next_diag = [&] { return std::min(t_end, diag_k * diag_step); };
    auto next_snap = [&] { return std::min(t_end, snap_k * snap_step); };
    const double eps = 1e-12 * t_end;

    emit_frame();
    if (snapshots) emit_snapshot();

    std::vector<CompositeSample> local;
    try {
        while (state.t < t_end - eps) {
            double target = next_diag();
            if (snapshots) target = std::min(target, next_snap());
            double dt = solver.stable_dt(state.v);
            if (state.t + dt > target - eps) dt = target - state.t;

            double xd = 0.0;
            if (with_shift) {
                const ShockWindow w = shock_window(field, state.t, grid, reach);
                local.resize(w.hi - w.lo);
                double warm = 0.0;
                for (std::size_t i = w.lo; i < w.hi; ++i) {
                    local[i - w.lo] = field.eval(state.t, xi[i], i > w.lo ? &warm : nullptr);
                }
                xd = xdot(std::span<const double>(state.u).subspan(w.lo, w.hi - w.lo), local, field,
                          sp, dx);
            }
            const double t0 = state.t;
            solver.step(state, dt);
            if (with_shift) {
                const double x = integrator.advance(t0, field.shift(), xd, dt);
                field.set_shift(x);
                state.shift = x;
            }
            if (std::abs(state.t - target) <= eps) state.t = target;
            if (state.t >= next_diag() - eps) {
                emit_frame();
                ++diag_k;
            }
            if (snapshots && state.t >= next_snap() - eps) {
                emit_snapshot();
                ++snap_k;
            }
        }
    } catch (const SolverAbort& e) {
        res.summary.aborted = true;
        res.summary.abort_reason = e.what();
    }

    res.shift = integrator.history();
    const bool aborted = res.summary.aborted;
    const std::string reason = res.summary.abort_reason;
    res.summary = summarize(res.frames, res.shift, t_end, chart.delta_s);
    res.summary.aborted = aborted;
    res.summary.abort_reason = reason;
    res.summary.steps = state.steps;
    res.summary.margin =
        grid.length - ((chart.sigma - chart.sigma_minus) * state.t + field.shift() + chart.beta);
    res.final_state = std::move(state);
    return res;
}

}  // namespace wavelab
