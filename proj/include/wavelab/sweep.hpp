#pragma once

// Parameter sweeps: the cartesian grid over the configured axes, run on a
// small thread pool, one summary row per grid point.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wavelab/config.hpp"

namespace wavelab {

struct SweepPoint {
    std::optional<double> eps0;
    std::optional<double> delta_s;
    std::optional<double> beta;
    std::optional<int> cells;
};

/// Cartesian product of the non-empty axes (one empty point when none are set).
std::vector<SweepPoint> expand_sweep(const SweepAxes& axes);

/// The template with one grid point applied. Without a cells axis and with an
/// automatic domain length, the cell count follows the length so that the
/// template's grid spacing is kept.
RunConfig apply_point(const RunConfig& base, const SweepPoint& p);

struct SweepRow {
    std::size_t index = 0;
    SweepPoint point;
    std::string status;  // "ok", "aborted" or "error"
    std::string message;
    double eps0 = 0.0, delta_r = 0.0, delta_s = 0.0, beta = 0.0;
    double length = 0.0;
    int cells = 0;
    SimulationSummary summary;
    double y0 = 0.0;            // y(t = 0, xi = 0)
    double boundary_gap = 0.0;  // |U- - Ubar(0, 0)|
    double lhs = 0.0;           // sup ||U - Ubar||_{H1}^2 + int dissipation dt
    double bracket = 0.0;       // ||U0 - Ubar(0)||_{H1}^2 + delta0^{1/6} + exp(-delta_S beta)
    double c0 = 0.0;            // lhs / bracket
    SolverState final_state;    // kept in memory for grid comparisons, not written

    static const std::vector<std::string>& column_names();
    std::vector<std::string> fields() const;
};

/// Summary row of a finished run (shared with `simulate`).
SweepRow make_row(const RunConfig& cfg, const SimulationSetup& setup, const CompositeField& field,
                  const SimulationResult& result);

/// Successive-resolution differences of final states for rows that differ
/// only in the cell count (cell counts dividing each other), compared on the
/// coarse nodes. `order` is log2 of consecutive difference ratios when the
/// refinement factor is 2 (NaN otherwise).
struct GridComparison {
    double eps0 = 0.0, delta_s = 0.0, beta = 0.0;
    int coarse = 0, fine = 0;
    double difference = 0.0;
    double order = 0.0;
};
std::vector<GridComparison> compare_resolutions(const std::vector<SweepRow>& rows);

/// Worker count: WAVE_LAB_THREADS when set and positive, else the hardware
/// concurrency, never more than `jobs`.
unsigned sweep_threads(std::size_t jobs);

/// Runs every point; failures are recorded in their row and never stop the
/// sweep. `on_row` is called under a lock as rows complete.
std::vector<SweepRow> run_sweep(const RunConfig& base,
                                const std::function<void(const SweepRow&)>& on_row = {});

}  // namespace wavelab
