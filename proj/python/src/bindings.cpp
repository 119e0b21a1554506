#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavelab/config.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/io.hpp"
#include "wavelab/sweep.hpp"
#include "wavelab/verify.hpp"

namespace py = pybind11;
using namespace wavelab;
using ojson = nlohmann::ordered_json;

namespace {

RunConfig config_from(const std::string& text) { return parse_config(nlohmann::json::parse(text)); }

std::string chart_json(const std::string& config) {
    ojson j;
    for (const auto& [k, v] : resolve_chart(config_from(config)).to_record()) j[k] = v;
    return j.dump();
}

py::dict table_dict(const ProfileTable& t) {
    py::dict d;
    d["xi"] = t.xi;
    d["v"] = t.v;
    d["u"] = t.u;
    d["v_xi"] = t.v_xi;
    d["u_xi"] = t.u_xi;
    return d;
}

py::dict profiles(const std::string& config) {
    const RunConfig cfg = config_from(config);
    const WaveChart c = resolve_chart(cfg);
    py::dict out;
    if (c.has_boundary_layer()) out["boundary_layer"] = table_dict(integrate_boundary_layer(c, cfg.gas, cfg.profile));
    if (c.has_shock()) out["shock"] = table_dict(integrate_shock(c, cfg.gas, cfg.profile));
    return out;
}

py::dict composite(const std::string& config, double t, const std::vector<double>& xi) {
    const RunConfig cfg = config_from(config);
    const CompositeField f(resolve_chart(cfg), cfg.gas, cfg.profile);
    std::vector<CompositeSample> s;
    f.eval_grid(t, xi, s);
    std::vector<double> v, u, vx, ux;
    for (const CompositeSample& c : s) {
        v.push_back(c.v);
        u.push_back(c.u);
        vx.push_back(c.v_x);
        ux.push_back(c.u_x);
    }
    py::dict d;
    d["xi"] = xi;
    d["v"] = v;
    d["u"] = u;
    d["v_xi"] = vx;
    d["u_xi"] = ux;
    return d;
}

py::dict simulate(const std::string& config) {
    const RunConfig cfg = config_from(config);
    SimulationSetup setup;
    SimulationResult res;
    {
        py::gil_scoped_release nogil;
        setup = make_setup(cfg);
        CompositeField field(setup.chart, setup.gas, setup.profile);
        res = run_simulation(setup, field);
    }
    py::dict columns;
    const auto& names = DiagnosticsFrame::column_names();
    std::vector<std::vector<double>> cols(names.size());
    for (const DiagnosticsFrame& f : res.frames) {
        const std::vector<double> v = f.values();
        for (std::size_t k = 0; k < v.size(); ++k) cols[k].push_back(v[k]);
    }
    for (std::size_t k = 0; k < names.size(); ++k) columns[py::str(names[k])] = cols[k];
    const SimulationSummary& s = res.summary;
    py::dict summary;
    summary["t_end"] = s.t_end;
    summary["steps"] = s.steps;
    summary["aborted"] = s.aborted;
    summary["abort_reason"] = s.abort_reason;
    summary["sup_ratio"] = s.sup_ratio;
    summary["xdot_trend_ratio"] = s.xdot_trend_ratio;
    summary["xdot_max"] = s.xdot_max;
    summary["x_over_t"] = s.x_over_t;
    summary["g_last_decile_fraction"] = s.g_last_decile_fraction;
    summary["g_prime_last_decile_fraction"] = s.g_prime_last_decile_fraction;
    py::dict out;
    out["frames"] = columns;
    out["summary"] = summary;
    out["v"] = res.final_state.v;
    out["u"] = res.final_state.u;
    return out;
}

std::string verify(const std::string& suite, const std::string& config, std::uint64_t seed) {
    const RunConfig cfg = config_from(config);
    VerifyReport r;
    {
        py::gil_scoped_release nogil;
        r = run_suite(suite, cfg, seed);
    }
    return r.to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "wave-lab core: gas relations, wave profiles, the inflow solver and diagnostics";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SolverAbort>(m, "SolverAbort", PyExc_RuntimeError);

    m.def("pressure", [](double v, double gamma) { return pressure(v, GasParams{gamma}); }, py::arg("v"),
          py::arg("gamma") = 5.0 / 3.0);
    m.def("lambda1", [](double v, double gamma) { return lambda1(v, GasParams{gamma}); }, py::arg("v"),
          py::arg("gamma") = 5.0 / 3.0);
    m.def("relative_pressure", [](double v, double w, double gamma) { return relative_pressure(v, w, GasParams{gamma}); },
          py::arg("v"), py::arg("w"), py::arg("gamma") = 5.0 / 3.0);
    m.def("relative_internal_energy",
          [](double v, double w, double gamma) { return relative_internal_energy(v, w, GasParams{gamma}); },
          py::arg("v"), py::arg("w"), py::arg("gamma") = 5.0 / 3.0);
    m.def("normalize_config", [](const std::string& text) { return to_json(config_from(text)).dump(); },
          "Parses and validates a configuration; returns it with defaults filled in.");
    m.def("chart", &chart_json, py::arg("config"), "Wave chart of a configuration, as JSON text.");
    m.def("profiles", &profiles, py::arg("config"), "Boundary-layer and shock profile tables.");
    m.def("composite", &composite, py::arg("config"), py::arg("t"), py::arg("xi"),
          "Composite wave at time t on the given points.");
    m.def("simulate", &simulate, py::arg("config"), "Runs the solver; diagnostics columns and a summary.");
    m.def("verify", &verify, py::arg("suite"), py::arg("config"), py::arg("seed"),
          "Runs a property battery; the report as JSON text.");
    m.def("verify_suites", &verify_suites);
}
