#pragma once

// End-state chart U- -> U_* -> U^* -> U+ for the boundary-layer /
// 1-rarefaction / viscous 2-shock pattern with a subsonic boundary value.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wavelab/gas.hpp"

namespace wavelab {

struct WaveChart {
    State u_minus;      // boundary value U-
    State u_star;       // transonic point on the boundary-layer line, U_*
    State u_mid;        // end of the 1-rarefaction, U^*
    State u_plus;       // far field U+
    double sigma_minus = 0.0;  // boundary frame speed -u-/v-
    double sigma = 0.0;        // 2-shock speed
    double delta_bl = 0.0;
    double delta_r = 0.0;
    double delta_s = 0.0;
    double beta = 0.0;  // initial shock offset

    bool has_boundary_layer() const { return delta_bl > 0.0; }
    bool has_rarefaction() const { return delta_r > 0.0; }
    bool has_shock() const { return delta_s > 0.0; }

    /// Flat key-value record, fixed key order (used in CSV headers and run metadata).
    std::vector<std::pair<std::string, double>> to_record() const;
    static WaveChart from_record(const std::vector<std::pair<std::string, double>>& record);
};

/// Intersection of the line u/v = u-/v- with the transonic curve u = c(v).
/// Requires U- subsonic (a transonic U- is returned unchanged).
State transonic_point(const State& u_minus, const GasParams& g);

/// Point of the 1-rarefaction curve through U_* at volume v_target >= v_*.
State r1_point(const State& u_star, double v_target, const GasParams& g);

struct ShockEndState {
    State state;
    double sigma = 0.0;
};

/// Point of the 2-Hugoniot locus through U^* at v_plus >= v^*, with its shock
/// speed. v_plus == v^* is the degenerate (no shock) limit where sigma -> sqrt(-p'(v^*)).
ShockEndState s2_point(const State& u_mid, double v_plus, const GasParams& g);

/// Residuals of the two Rankine-Hugoniot relations of the 2-shock.
std::pair<double, double> rankine_hugoniot_residuals(const State& left, const State& right,
                                                     double sigma, const GasParams& g);

/// beta = 100 / delta_S, or 100 for a chart without a shock.
double default_beta(double delta_s);

/// Builds the full chart; beta defaults to default_beta(delta_S).
WaveChart build_chart(const State& u_minus, double v_target_r1, double v_plus,
                      std::optional<double> beta, const GasParams& g);

/// Throws PreconditionError when any chart invariant fails.
void check_chart(const WaveChart& chart, const GasParams& g);

/// Volume v+ on the 2-Hugoniot locus through U^* whose Euclidean shock
/// strength equals delta_s (monotone bisection).
double v_plus_for_shock_strength(const State& u_mid, double delta_s, const GasParams& g);

/// Volume v^* on the 1-rarefaction curve through U_* with Euclidean strength delta_r.
double v_mid_for_rarefaction_strength(const State& u_star, double delta_r, const GasParams& g);

}  // namespace wavelab
