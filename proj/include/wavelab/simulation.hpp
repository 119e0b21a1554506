#pragma once

// Coupled solver + shift + diagnostics time loop.

#include <functional>
#include <string>
#include <vector>

#include "wavelab/diagnostics.hpp"
#include "wavelab/shift.hpp"
#include "wavelab/solver.hpp"
#include "wavelab/superpose.hpp"

namespace wavelab {

struct SimulationSetup {
    GasParams gas;
    WaveChart chart;
    Grid grid;
    double t_end = 1.0;
    PerturbationSpec perturbation;
    /// Spacing of diagnostic frames; 0 means frames only at t = 0 and t_end.
    double diag_interval = 0.0;
    /// Spacing of field snapshots; 0 means snapshots only at t = 0 and t_end,
    /// negative disables them.
    double snapshot_interval = -1.0;
    ProfileOptions profile;
    SolverOptions solver;
    FrameOptions frame;
};

struct SimulationSummary {
    double t_end = 0.0;
    long steps = 0;
    bool aborted = false;
    std::string abort_reason;
    double sup_initial = 0.0;
    double sup_final = 0.0;
    double sup_ratio = 0.0;
    double xdot_first_mean = 0.0;  // mean |X'| over the first 10% of the run
    double xdot_last_mean = 0.0;   // ... and over the last 10%
    double xdot_trend_ratio = 0.0;
    double xdot_max = 0.0;
    double x_final = 0.0;
    double x_over_t = 0.0;
    double g_integral = 0.0;        // int |g| dt over the frames
    double g_prime_integral = 0.0;  // int |g'| dt (total variation of g)
    double g_last_decile_fraction = 0.0;
    double g_prime_last_decile_fraction = 0.0;
    double jbd_integral = 0.0;      // int |sum J^bd| dt
    double margin = 0.0;            // L minus the final shock position
    double initial_h1_sq = 0.0;     // ||U0 - Ubar(0)||_{H1}^2
    double sup_h1_sq = 0.0;         // sup_t ||U - Ubar||_{H1}^2
    /// int (delta_S X'^2 + G_S + G_v + D_v + D_u1 + D_u2) dt over the frames
    double dissipation_integral = 0.0;
    double poincare_worst = 0.0;    // max lhs / rhs over frames with rhs > 0
};

struct SimulationResult {
    std::vector<DiagnosticsFrame> frames;
    std::vector<ShiftRecord> shift;
    SimulationSummary summary;
    SolverState final_state;
};

struct SimulationHooks {
    std::function<void(const DiagnosticsFrame&)> on_frame;
    std::function<void(const SolverState&, const std::vector<CompositeSample>&, double dx)>
        on_snapshot;
};

/// Runs to t_end. A SolverAbort stops the loop, marks the summary as aborted
/// and returns the frames recorded so far.
SimulationResult run_simulation(const SimulationSetup& setup, const SimulationHooks& hooks = {});

/// Same, reusing already built profiles.
SimulationResult run_simulation(const SimulationSetup& setup, CompositeField& field,
                                const SimulationHooks& hooks = {});

/// Summary statistics from a finished frame/shift record.
SimulationSummary summarize(const std::vector<DiagnosticsFrame>& frames,
                            const std::vector<ShiftRecord>& shift, double t_end, double delta_s);

}  // namespace wavelab
