#pragma once

// Run configuration: a versioned JSON document. Unknown keys are rejected.
//
// {
//   "schema": "wave-lab/1",
//   "gas":   {"gamma": 1.6666666666666667},
//   "chart": {"u_minus": {"v": 1, "u": 1}, "v_mid": 1.3, "v_plus": 1.35,
//             "beta": null, "beta_factor": 100},
//   "grid":  {"length": null, "cells": 4000, "margin_factor": 30},
//   "time":  {"t_end": 200, "cfl_advective": 0.4, "cfl_viscous": 0.4},
//   "perturbation": {"eps0": 0.01, "window": [0.125, 0.25], "shape": "both"},
//   "cadence": {"diagnostics": 2, "snapshots": 50},
//   "tolerances": {"profile": 1e-10, "newton": 1e-14, "interaction": 1e-10},
//   "diagnostics": {"interactions": true, "poincare": true},
//   "seed": 20240601,
//   "sweep": {"eps0": [...], "delta_s": [...], "beta": [...], "cells": [...]},
//   "verify": {"samples": 100000, "polynomials": 1000, "delta_star_factor": 0.5}
// }
//
// "v_mid" is the volume of the state reached by the 1-rarefaction; "delta_r"
// may replace it, and "delta_s" may replace "v_plus".

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavelab/simulation.hpp"

namespace wavelab {

inline constexpr const char* kConfigSchema = "wave-lab/1";

struct ChartSpec {
    State u_minus{1.0, 1.0};
    std::optional<double> v_mid;
    std::optional<double> delta_r;
    std::optional<double> v_plus;
    std::optional<double> delta_s;
    std::optional<double> beta;
    double beta_factor = 100.0;
};

struct SweepAxes {
    std::vector<double> eps0;
    std::vector<double> delta_s;
    std::vector<double> beta;
    std::vector<int> cells;
    bool empty() const { return eps0.empty() && delta_s.empty() && beta.empty() && cells.empty(); }
};

struct VerifyOptions {
    long samples = 100000;
    long polynomials = 1000;
    double delta_star_factor = 0.5;
};

struct RunConfig {
    GasParams gas;
    ChartSpec chart;
    std::optional<double> length;
    int cells = 4000;
    double margin_factor = 30.0;
    double t_end = 200.0;
    PerturbationSpec perturbation;
    double diag_interval = 2.0;
    double snapshot_interval = 50.0;
    ProfileOptions profile;
    SolverOptions solver;
    FrameOptions frame;
    std::uint64_t seed = 20240601;
    SweepAxes sweep;
    VerifyOptions verify;
};

/// Parses and validates the document structure (types, ranges, unknown keys).
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const RunConfig& cfg);

/// Builds the wave chart (PreconditionError / DomainError on inadmissible data).
WaveChart resolve_chart(const RunConfig& cfg);

/// Domain length: the configured one, or the smallest multiple of 50 with
/// L - (sigma - sigma_-) t_end - beta >= margin_factor / delta_S.
double resolve_length(const RunConfig& cfg, const WaveChart& chart);

/// Everything the time loop needs; validates all module preconditions.
SimulationSetup make_setup(const RunConfig& cfg);

}  // namespace wavelab
