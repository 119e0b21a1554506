#pragma once

// Dynamical shift X(t) of the viscous shock:
//   X' = -(M / delta_S) [ int a u^S_x (u - ubar) + (1/sigma) int a p'(vbar) v^S_x (u - ubar) ]
// with M = (3/2) (sigma^*)^3 alpha^*.

#include <span>
#include <vector>

#include "wavelab/solver.hpp"
#include "wavelab/superpose.hpp"

namespace wavelab {

struct ShiftParams {
    double M = 0.0;
    double delta_s = 0.0;
    double alpha_star = 0.0;
    double sigma_star = 0.0;  // sqrt(-p'(v^*))
    double p_star = 0.0;      // p(v^*)
};

ShiftParams make_shift_params(const WaveChart& chart, const GasParams& g);

/// Shift speed for the solution fields (v, u) given the composite samples at
/// the same nodes (trapezoid rule on a uniform grid of spacing dx).
double xdot(std::span<const double> u, std::span<const CompositeSample> bar,
            const CompositeField& field, const ShiftParams& p, double dx);

struct ShiftRecord {
    double t = 0.0;
    double x = 0.0;
    double xdot = 0.0;
};

class ShiftIntegrator {
public:
    explicit ShiftIntegrator(double blowup_limit) : limit_(blowup_limit) {}

    /// Explicit Euler X <- X + dt * xdot, recording (t, X, xdot) before the
    /// update. SolverAbort when |xdot| exceeds the blow-up limit.
    double advance(double t, double x, double xd, double dt);

    const std::vector<ShiftRecord>& history() const { return history_; }
    double limit() const { return limit_; }

private:
    double limit_;
    std::vector<ShiftRecord> history_;
};

/// 10 (|sigma| + |sigma_-|).
double shift_blowup_limit(const WaveChart& chart);

}  // namespace wavelab
