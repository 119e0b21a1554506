#pragma once

// Property batteries behind `wave-lab verify <suite>`.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavelab/config.hpp"

namespace wavelab {

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    std::string relation;  // "<", "<=", ">", ">=", "=="
    double threshold = 0.0;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

struct VerifyReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    nlohmann::ordered_json fitted = nlohmann::ordered_json::object();

    /// Appends a check whose status is `measured relation threshold`.
    Check& add(const std::string& name, double measured, const std::string& relation,
               double threshold, nlohmann::ordered_json details = nlohmann::ordered_json::object());
    bool passed() const;
    nlohmann::ordered_json to_json() const;
};

/// Build/toolchain description with no time-dependent content.
nlohmann::ordered_json environment_fingerprint();

const std::vector<std::string>& verify_suites();

VerifyReport verify_gas(const RunConfig& cfg, std::uint64_t seed);
VerifyReport verify_poincare(const RunConfig& cfg, std::uint64_t seed);
VerifyReport verify_profiles(const RunConfig& cfg, std::uint64_t seed);
VerifyReport verify_interactions(const RunConfig& cfg, std::uint64_t seed);
VerifyReport verify_simulate_short(const RunConfig& cfg, std::uint64_t seed);

/// Dispatch by suite name; ConfigError for an unknown suite.
VerifyReport run_suite(const std::string& suite, const RunConfig& cfg, std::uint64_t seed);

/// Interaction time series on t in {0, 10, ..., 100}/delta_S with envelope
/// fits (shared by the interactions suite and the acceptance binary).
struct InteractionSeries {
    std::vector<double> t;
    std::vector<double> i1, i2, i3, l2;
};
InteractionSeries sample_interactions(const CompositeField& f, const std::vector<double>& times,
                                      double tol);

/// int_0^T ||R||^2 dt on a geometric time grid.
double interaction_l2_time_integral(const CompositeField& f, double t_max, double tol);

}  // namespace wavelab
