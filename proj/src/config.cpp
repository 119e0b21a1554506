#include "wavelab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "wavelab/errors.hpp"

namespace wavelab {

using nlohmann::json;

namespace {

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
        }
    }
}

double number(const json& obj, const char* key, const std::string& where, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + "." + key + " must be finite");
    return x;
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return number(obj, key, where, 0.0);
}

bool boolean(const json& obj, const char* key, const std::string& where, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
    return obj.at(key).get<bool>();
}

template <class T>
std::vector<T> number_list(const json& obj, const char* key, const std::string& where) {
    std::vector<T> out;
    if (!obj.contains(key)) return out;
    const json& a = obj.at(key);
    if (!a.is_array()) throw ConfigError(where + "." + key + " must be an array");
    for (const json& v : a) {
        if (!v.is_number()) throw ConfigError(where + "." + key + " entries must be numbers");
        if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) throw ConfigError(where + "." + key + " entries must be integers");
        }
        out.push_back(v.get<T>());
    }
    return out;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

}  // namespace

RunConfig parse_config(const json& doc) {
    only_keys(doc, "config",
              {"schema", "gas", "chart", "grid", "time", "perturbation", "cadence", "tolerances",
               "diagnostics", "seed", "sweep", "verify", "description"});
    if (!doc.contains("schema") || !doc.at("schema").is_string()) {
        throw ConfigError("config.schema is required");
    }
    if (doc.at("schema").get<std::string>() != kConfigSchema) {
        throw ConfigError("unsupported schema '" + doc.at("schema").get<std::string>() +
                          "' (expected " + kConfigSchema + ")");
    }
    RunConfig c;
    if (doc.contains("gas")) {
        const json& g = doc.at("gas");
        only_keys(g, "gas", {"gamma"});
        c.gas.gamma = number(g, "gamma", "gas", c.gas.gamma);
        require(c.gas.gamma > 1.0, "gas.gamma must exceed 1");
    }
    if (!doc.contains("chart")) throw ConfigError("config.chart is required");
    {
        const json& ch = doc.at("chart");
        only_keys(ch, "chart", {"u_minus", "v_mid", "delta_r", "v_plus", "delta_s", "beta", "beta_factor"});
        if (ch.contains("u_minus")) {
            const json& um = ch.at("u_minus");
            only_keys(um, "chart.u_minus", {"v", "u"});
            c.chart.u_minus.v = number(um, "v", "chart.u_minus", 1.0);
            c.chart.u_minus.u = number(um, "u", "chart.u_minus", 1.0);
        }
        c.chart.v_mid = optional_number(ch, "v_mid", "chart");
        c.chart.delta_r = optional_number(ch, "delta_r", "chart");
        c.chart.v_plus = optional_number(ch, "v_plus", "chart");
        c.chart.delta_s = optional_number(ch, "delta_s", "chart");
        c.chart.beta = optional_number(ch, "beta", "chart");
        c.chart.beta_factor = number(ch, "beta_factor", "chart", c.chart.beta_factor);
        require(c.chart.v_mid.has_value() != c.chart.delta_r.has_value(),
                "chart needs exactly one of v_mid, delta_r");
        require(c.chart.v_plus.has_value() != c.chart.delta_s.has_value(),
                "chart needs exactly one of v_plus, delta_s");
        require(c.chart.beta_factor > 0.0, "chart.beta_factor must be positive");
        if (c.chart.beta) require(*c.chart.beta > 0.0, "chart.beta must be positive");
        if (c.chart.delta_r) require(*c.chart.delta_r >= 0.0, "chart.delta_r must be >= 0");
        if (c.chart.delta_s) require(*c.chart.delta_s >= 0.0, "chart.delta_s must be >= 0");
    }
    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        only_keys(g, "grid", {"length", "cells", "margin_factor"});
        c.length = optional_number(g, "length", "grid");
        if (g.contains("cells")) {
            require(g.at("cells").is_number_integer(), "grid.cells must be an integer");
            c.cells = g.at("cells").get<int>();
        }
        c.margin_factor = number(g, "margin_factor", "grid", c.margin_factor);
        require(c.cells >= 16, "grid.cells must be at least 16");
        if (c.length) require(*c.length > 0.0, "grid.length must be positive");
        require(c.margin_factor >= 0.0, "grid.margin_factor must be >= 0");
    }
    if (doc.contains("time")) {
        const json& t = doc.at("time");
        only_keys(t, "time", {"t_end", "cfl_advective", "cfl_viscous"});
        c.t_end = number(t, "t_end", "time", c.t_end);
        c.solver.cfl_advective = number(t, "cfl_advective", "time", c.solver.cfl_advective);
        c.solver.cfl_viscous = number(t, "cfl_viscous", "time", c.solver.cfl_viscous);
        require(c.t_end > 0.0, "time.t_end must be positive");
        require(c.solver.cfl_advective > 0.0 && c.solver.cfl_viscous > 0.0,
                "CFL numbers must be positive");
    }
    if (doc.contains("perturbation")) {
        const json& p = doc.at("perturbation");
        only_keys(p, "perturbation", {"eps0", "window", "shape"});
        c.perturbation.eps0 = number(p, "eps0", "perturbation", 0.0);
        if (p.contains("window")) {
            const std::vector<double> w = number_list<double>(p, "window", "perturbation");
            require(w.size() == 2, "perturbation.window must have two entries");
            c.perturbation.window_lo = w[0];
            c.perturbation.window_hi = w[1];
        }
        if (p.contains("shape")) {
            require(p.at("shape").is_string(), "perturbation.shape must be a string");
            c.perturbation.shape = p.at("shape").get<std::string>();
        }
        require(c.perturbation.eps0 >= 0.0, "perturbation.eps0 must be >= 0");
        require(c.perturbation.window_lo > 0.0 && c.perturbation.window_lo < c.perturbation.window_hi &&
                    c.perturbation.window_hi < 1.0,
                "perturbation.window must satisfy 0 < lo < hi < 1");
        const std::string& s = c.perturbation.shape;
        require(s == "both" || s == "v" || s == "u" || s == "two_wave",
                "perturbation.shape must be one of both, v, u, two_wave");
    }
    if (doc.contains("cadence")) {
        const json& k = doc.at("cadence");
        only_keys(k, "cadence", {"diagnostics", "snapshots"});
        c.diag_interval = number(k, "diagnostics", "cadence", c.diag_interval);
        c.snapshot_interval = number(k, "snapshots", "cadence", c.snapshot_interval);
        require(c.diag_interval >= 0.0, "cadence.diagnostics must be >= 0");
    }
    if (doc.contains("tolerances")) {
        const json& t = doc.at("tolerances");
        only_keys(t, "tolerances", {"profile", "newton", "interaction"});
        c.profile.tol = number(t, "profile", "tolerances", c.profile.tol);
        c.profile.newton_tol = number(t, "newton", "tolerances", c.profile.newton_tol);
        c.frame.interaction_tol = number(t, "interaction", "tolerances", c.frame.interaction_tol);
        require(c.profile.tol > 0.0 && c.profile.newton_tol > 0.0 && c.frame.interaction_tol > 0.0,
                "tolerances must be positive");
    }
    if (doc.contains("diagnostics")) {
        const json& d = doc.at("diagnostics");
        only_keys(d, "diagnostics", {"interactions", "poincare"});
        c.frame.interactions = boolean(d, "interactions", "diagnostics", c.frame.interactions);
        c.frame.poincare = boolean(d, "poincare", "diagnostics", c.frame.poincare);
    }
    if (doc.contains("seed")) {
        require(doc.at("seed").is_number_unsigned(), "seed must be a non-negative integer");
        c.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        only_keys(s, "sweep", {"eps0", "delta_s", "beta", "cells"});
        c.sweep.eps0 = number_list<double>(s, "eps0", "sweep");
        c.sweep.delta_s = number_list<double>(s, "delta_s", "sweep");
        c.sweep.beta = number_list<double>(s, "beta", "sweep");
        c.sweep.cells = number_list<int>(s, "cells", "sweep");
        for (double e : c.sweep.eps0) require(e >= 0.0, "sweep.eps0 entries must be >= 0");
        for (double d : c.sweep.delta_s) require(d > 0.0, "sweep.delta_s entries must be > 0");
        for (double b : c.sweep.beta) require(b > 0.0, "sweep.beta entries must be > 0");
        for (int n : c.sweep.cells) require(n >= 16, "sweep.cells entries must be >= 16");
    }
    if (doc.contains("verify")) {
        const json& v = doc.at("verify");
        only_keys(v, "verify", {"samples", "polynomials", "delta_star_factor"});
        if (v.contains("samples")) {
            require(v.at("samples").is_number_integer(), "verify.samples must be an integer");
            c.verify.samples = v.at("samples").get<long>();
        }
        if (v.contains("polynomials")) {
            require(v.at("polynomials").is_number_integer(), "verify.polynomials must be an integer");
            c.verify.polynomials = v.at("polynomials").get<long>();
        }
        c.verify.delta_star_factor = number(v, "delta_star_factor", "verify", c.verify.delta_star_factor);
        require(c.verify.samples > 0 && c.verify.polynomials > 0, "verify sample counts must be positive");
        require(c.verify.delta_star_factor > 0.0, "verify.delta_star_factor must be positive");
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["schema"] = kConfigSchema;
    j["gas"] = {{"gamma", c.gas.gamma}};
    nlohmann::ordered_json ch;
    ch["u_minus"] = {{"v", c.chart.u_minus.v}, {"u", c.chart.u_minus.u}};
    if (c.chart.v_mid) ch["v_mid"] = *c.chart.v_mid;
    if (c.chart.delta_r) ch["delta_r"] = *c.chart.delta_r;
    if (c.chart.v_plus) ch["v_plus"] = *c.chart.v_plus;
    if (c.chart.delta_s) ch["delta_s"] = *c.chart.delta_s;
    ch["beta"] = c.chart.beta ? nlohmann::ordered_json(*c.chart.beta) : nlohmann::ordered_json(nullptr);
    ch["beta_factor"] = c.chart.beta_factor;
    j["chart"] = ch;
    j["grid"] = {{"length", c.length ? nlohmann::ordered_json(*c.length) : nlohmann::ordered_json(nullptr)},
                 {"cells", c.cells},
                 {"margin_factor", c.margin_factor}};
    j["time"] = {{"t_end", c.t_end},
                 {"cfl_advective", c.solver.cfl_advective},
                 {"cfl_viscous", c.solver.cfl_viscous}};
    j["perturbation"] = {{"eps0", c.perturbation.eps0},
                         {"window", {c.perturbation.window_lo, c.perturbation.window_hi}},
                         {"shape", c.perturbation.shape}};
    j["cadence"] = {{"diagnostics", c.diag_interval}, {"snapshots", c.snapshot_interval}};
    j["tolerances"] = {{"profile", c.profile.tol},
                       {"newton", c.profile.newton_tol},
                       {"interaction", c.frame.interaction_tol}};
    j["diagnostics"] = {{"interactions", c.frame.interactions}, {"poincare", c.frame.poincare}};
    j["seed"] = c.seed;
    return j;
}

WaveChart resolve_chart(const RunConfig& cfg) {
    const GasParams& g = cfg.gas;
    g.validate();
    const State ustar = transonic_point(cfg.chart.u_minus, g);
    const double v_mid = cfg.chart.v_mid ? *cfg.chart.v_mid
                                         : v_mid_for_rarefaction_strength(ustar, *cfg.chart.delta_r, g);
    double v_plus = 0.0;
    if (cfg.chart.v_plus) {
        v_plus = *cfg.chart.v_plus;
    } else {
        const State umid = r1_point(ustar, v_mid, g);
        v_plus = v_plus_for_shock_strength(umid, *cfg.chart.delta_s, g);
    }
    WaveChart c = build_chart(cfg.chart.u_minus, v_mid, v_plus, cfg.chart.beta, g);
    if (!cfg.chart.beta && c.has_shock()) c.beta = cfg.chart.beta_factor / c.delta_s;
    check_chart(c, g);
    return c;
}

double resolve_length(const RunConfig& cfg, const WaveChart& chart) {
    if (cfg.length) return *cfg.length;
    double need = 0.0;
    if (chart.has_shock()) {
        need = (chart.sigma - chart.sigma_minus) * cfg.t_end + chart.beta +
               cfg.margin_factor / chart.delta_s;
    } else {
        const double head = (lambda1(chart.u_mid.v, cfg.gas) - chart.sigma_minus) * cfg.t_end;
        need = std::max(0.0, head) + 200.0;
    }
    return 50.0 * std::ceil(need / 50.0);
}

SimulationSetup make_setup(const RunConfig& cfg) {
    SimulationSetup s;
    s.gas = cfg.gas;
    s.chart = resolve_chart(cfg);
    s.grid = Grid{resolve_length(cfg, s.chart), cfg.cells};
    s.grid.validate();
    s.t_end = cfg.t_end;
    s.perturbation = cfg.perturbation;
    s.diag_interval = cfg.diag_interval;
    s.snapshot_interval = cfg.snapshot_interval;
    s.profile = cfg.profile;
    s.solver = cfg.solver;
    s.frame = cfg.frame;
    if (s.chart.has_shock()) {
        const double margin =
            s.grid.length - (s.chart.sigma - s.chart.sigma_minus) * s.t_end - s.chart.beta;
        if (margin <= 0.0) {
            throw ConfigError("domain too short: the shock leaves [0, L] before t_end");
        }
    }
    return s;
}

}  // namespace wavelab
