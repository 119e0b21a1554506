// wave-lab: profiles, single runs, verification batteries and sweeps.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wavelab/config.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/fit.hpp"
#include "wavelab/io.hpp"
#include "wavelab/sweep.hpp"
#include "wavelab/verify.hpp"

namespace fs = std::filesystem;
using namespace wavelab;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAbort = 3;

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
};

RunConfig load(const Common& c) {
    RunConfig cfg = load_config(c.config);
    if (c.seed) cfg.seed = *c.seed;
    return cfg;
}

ojson chart_json(const WaveChart& chart) {
    ojson j;
    for (const auto& [k, v] : chart.to_record()) j[k] = v;
    return j;
}

ojson summary_json(const SimulationSummary& s) {
    return {{"t_end", s.t_end},
            {"steps", s.steps},
            {"aborted", s.aborted},
            {"abort_reason", s.abort_reason},
            {"sup_initial", s.sup_initial},
            {"sup_final", s.sup_final},
            {"sup_ratio", s.sup_ratio},
            {"xdot_first_mean", s.xdot_first_mean},
            {"xdot_last_mean", s.xdot_last_mean},
            {"xdot_trend_ratio", s.xdot_trend_ratio},
            {"xdot_max", s.xdot_max},
            {"x_final", s.x_final},
            {"x_over_t", s.x_over_t},
            {"g_integral", s.g_integral},
            {"g_prime_integral", s.g_prime_integral},
            {"g_last_decile_fraction", s.g_last_decile_fraction},
            {"g_prime_last_decile_fraction", s.g_prime_last_decile_fraction},
            {"jbd_integral", s.jbd_integral},
            {"margin", s.margin},
            {"initial_h1_sq", s.initial_h1_sq},
            {"sup_h1_sq", s.sup_h1_sq},
            {"dissipation_integral", s.dissipation_integral},
            {"poincare_worst", s.poincare_worst}};
}

void print_checks(const VerifyReport& r) {
    for (const Check& c : r.checks) {
        std::printf("%s  %-62s %.6g %s %.6g\n", c.pass ? "pass" : "FAIL", c.name.c_str(), c.measured,
                    c.relation.c_str(), c.threshold);
    }
}

int cmd_profiles(const Common& opt) {
    const RunConfig cfg = load(opt);
    const WaveChart chart = resolve_chart(cfg);
    const ProfileTable bl = integrate_boundary_layer(chart, cfg.gas, cfg.profile);
    const ProfileTable sh = integrate_shock(chart, cfg.gas, cfg.profile);
    const RarefactionEvaluator re(chart, cfg.gas, cfg.profile.newton_tol);
    const VerifyReport rep = verify_profiles(cfg, cfg.seed);

    fs::create_directories(opt.out);
    if (chart.has_boundary_layer()) {
        write_profile_csv(fs::path(opt.out) / "boundary_layer.csv", bl);
    } else {
        std::cerr << "notice: zero boundary-layer strength, boundary_layer.csv skipped\n";
    }
    if (chart.has_rarefaction()) {
        // the fan at t_end on a uniform grid reaching past its head
        const double head = std::max(1.0, (lambda1(chart.u_mid.v, cfg.gas) - chart.sigma_minus) * cfg.t_end);
        CsvWriter w(fs::path(opt.out) / "rarefaction.csv", {"xi", "v", "u", "v_xi", "u_xi"});
        double warm = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double xi = 2.0 * head * i / 2000.0;
            const RarefactionSample s = re.eval(cfg.t_end, xi, &warm);
            w.row(std::vector<double>{xi, s.v, s.u, s.v_x, s.u_x});
        }
    } else {
        std::cerr << "notice: zero rarefaction strength, rarefaction.csv skipped\n";
    }
    if (chart.has_shock()) {
        write_profile_csv(fs::path(opt.out) / "shock.csv", sh);
    } else {
        std::cerr << "notice: zero shock strength, shock.csv skipped\n";
    }

    ojson j;
    j["chart"] = chart_json(chart);
    j["rarefaction_time"] = cfg.t_end;
    j["fits"] = rep.fitted;
    j["checks"] = rep.to_json()["checks"];
    j["status"] = rep.passed() ? "pass" : "fail";
    write_json(fs::path(opt.out) / "profiles.json", j);
    print_checks(rep);
    return rep.passed() ? 0 : kExitFail;
}

int cmd_simulate(const Common& opt) {
    const RunConfig cfg = load(opt);
    const SimulationSetup setup = make_setup(cfg);
    CompositeField field(setup.chart, setup.gas, setup.profile);

    const fs::path out(opt.out);
    fs::create_directories(out / "snapshots");
    ojson meta;
    meta["config"] = to_json(cfg);
    meta["chart"] = chart_json(setup.chart);
    meta["grid"] = {{"length", setup.grid.length}, {"cells", setup.grid.cells}, {"dx", setup.grid.dx()}};
    meta["cfl"] = {{"advective", setup.solver.cfl_advective}, {"viscous", setup.solver.cfl_viscous}};
    meta["tolerances"] = {{"profile", setup.profile.tol},
                          {"newton", setup.profile.newton_tol},
                          {"interaction", setup.frame.interaction_tol}};
    write_json(out / "run.json", meta);

    CsvWriter diag(out / "diagnostics.csv", DiagnosticsFrame::column_names());
    int snap_index = 0;
    SimulationHooks hooks;
    hooks.on_frame = [&](const DiagnosticsFrame& f) {
        diag.row(f.values());
        diag.flush();
    };
    hooks.on_snapshot = [&](const SolverState& s, const std::vector<CompositeSample>& bar, double dx) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%04d.csv", snap_index++);
        const std::vector<double> h = effective_velocity(s, dx);
        CsvWriter w(out / "snapshots" / name, {"xi", "v", "u", "vbar", "ubar", "h"});
        for (std::size_t i = 0; i < s.v.size(); ++i) {
            w.row(std::vector<double>{double(i) * dx, s.v[i], s.u[i], bar[i].v, bar[i].u, h[i]});
        }
    };

    const SimulationResult res = run_simulation(setup, field, hooks);
    {
        CsvWriter w(out / "shift.csv", {"t", "X", "Xdot"});
        for (const ShiftRecord& r : res.shift) w.row(std::vector<double>{r.t, r.x, r.xdot});
    }
    const SweepRow row = make_row(cfg, setup, field, res);
    ojson report;
    report["summary"] = summary_json(res.summary);
    report["apriori"] = {{"lhs", row.lhs}, {"bracket", row.bracket}, {"C0", row.c0}};
    report["y0"] = row.y0;
    report["boundary_gap"] = row.boundary_gap;
    report["snapshots"] = snap_index;
    write_json(out / "report.json", report);

    std::vector<double> t;
    Series sup{"sup |U - Ubar|", {}}, h1{"||U - Ubar||_H1^2", {}}, xd{"|Xdot|", {}}, x{"X", {}};
    Series gs{"G_S", {}}, dv{"D_v", {}}, du1{"D_u1", {}}, du2{"D_u2", {}};
    for (const DiagnosticsFrame& f : res.frames) {
        t.push_back(f.t);
        sup.y.push_back(f.sup_perturbation);
        h1.y.push_back(f.h1_sq);
        xd.y.push_back(std::abs(f.xdot));
        x.y.push_back(f.shift);
        gs.y.push_back(f.g_s);
        dv.y.push_back(f.d_v);
        du1.y.push_back(f.d_u1_plain);
        du2.y.push_back(f.d_u2_plain);
    }
    write_svg_chart(out / "perturbation.svg", "Perturbation size", "t", t, {sup, h1}, true);
    write_svg_chart(out / "shift.svg", "Shift", "t", t, {x}, false);
    write_svg_chart(out / "shift_velocity.svg", "Shift velocity", "t", t, {xd}, true);
    write_svg_chart(out / "dissipation.svg", "Good terms", "t", t, {gs, dv, du1, du2}, true);

    const SimulationSummary& s = res.summary;
    std::printf("steps %ld  t %.6g  sup ratio %.6g  Xdot trend %.6g  |X|/t %.6g  C0 %.6g\n", s.steps,
                s.t_end, s.sup_ratio, s.xdot_trend_ratio, s.x_over_t, row.c0);
    if (s.aborted) {
        std::cerr << "solver aborted: " << s.abort_reason << "\n";
        return kExitAbort;
    }
    return 0;
}

int cmd_verify(const Common& opt, const std::string& suite) {
    const RunConfig cfg = load(opt);
    const VerifyReport rep = run_suite(suite, cfg, cfg.seed);
    fs::create_directories(opt.out);
    write_json(fs::path(opt.out) / ("verify_" + suite + ".json"), rep.to_json());
    print_checks(rep);
    std::printf("%s: %s\n", suite.c_str(), rep.passed() ? "pass" : "FAIL");
    return rep.passed() ? 0 : kExitFail;
}

int cmd_sweep(const Common& opt) {
    const RunConfig cfg = load(opt);
    // validate every grid point before any compute
    for (const SweepPoint& p : expand_sweep(cfg.sweep)) make_setup(apply_point(cfg, p));
    fs::create_directories(opt.out);
    const std::vector<SweepRow> rows = run_sweep(cfg, [](const SweepRow& r) {
        std::fprintf(stderr, "run %zu: %s  C0 %.6g\n", r.index, r.status.c_str(), r.c0);
    });
    CsvWriter w(fs::path(opt.out) / "sweep.csv", SweepRow::column_names());
    bool all_ok = true;
    for (const SweepRow& r : rows) {
        w.row(r.fields());
        all_ok = all_ok && r.status == "ok";
    }
    const std::vector<GridComparison> conv = compare_resolutions(rows);
    if (!conv.empty()) {
        CsvWriter c(fs::path(opt.out) / "convergence.csv",
                    {"eps0", "delta_s", "beta", "cells_coarse", "cells_fine", "max_difference", "order"});
        for (const GridComparison& g : conv) {
            c.row(std::vector<std::string>{format_double(g.eps0), format_double(g.delta_s), format_double(g.beta),
                                           std::to_string(g.coarse), std::to_string(g.fine),
                                           format_double(g.difference), format_double(g.order)});
        }
    }
    return all_ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wave-lab: boundary layer, rarefaction and viscous shock superposition experiments"};
    app.require_subcommand(1);
    Common opt;
    std::string suite;
    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", opt.seed, "RNG seed (overrides the config)");
        sub->add_option("--out", opt.out, "output directory")->capture_default_str();
    };
    CLI::App* profiles = app.add_subcommand("profiles", "integrate and check the wave profiles");
    CLI::App* simulate = app.add_subcommand("simulate", "run the solver with diagnostics");
    CLI::App* verify = app.add_subcommand("verify", "run a property battery");
    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid");
    for (CLI::App* s : {profiles, simulate, verify, sweep}) add_common(s);
    verify->add_option("suite", suite, "gas | poincare | profiles | interactions | simulate-short")
        ->required()
        ->check(CLI::IsMember(verify_suites()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*profiles) return cmd_profiles(opt);
        if (*simulate) return cmd_simulate(opt);
        if (*verify) return cmd_verify(opt, suite);
        if (*sweep) return cmd_sweep(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
