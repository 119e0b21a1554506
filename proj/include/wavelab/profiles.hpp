#pragma once

// Elementary wave profiles: the stationary degenerate boundary layer, the
// viscous 2-shock traveling wave and the smooth approximate 1-rarefaction.

#include <string_view>
#include <vector>

#include "wavelab/endstates.hpp"
#include "wavelab/gas.hpp"

namespace wavelab {

enum class ProfileKind { BoundaryLayer, Shock };

std::string_view to_string(ProfileKind k);

/// Tail beyond the table edge. Shock: dev = prefactor * exp(-rate * |s - offset|)
/// with offset the edge abscissa. Boundary layer: dev = prefactor / (s + offset).
struct TailFit {
    double rate = 0.0;
    double prefactor = 0.0;
    double offset = 0.0;
};

/// Value and derivatives of a profile at one abscissa. dev_left = v - v_left
/// and dev_right = v_right - v keep full relative accuracy in the tails.
struct ProfileSample {
    double v = 0.0, u = 0.0;
    double v_x = 0.0, u_x = 0.0;
    double v_xx = 0.0, u_xx = 0.0;
    double dev_left = 0.0, dev_right = 0.0;
};

struct ProfileOptions {
    double tol = 1e-10;
    /// Half-width of the shock table; 0 selects max(50/rate, min(10 beta, 600/rate)).
    double zeta_max = 0.0;
    /// Boundary-layer table end; 0 selects the cut v_* - v < 1e-3 delta_BL.
    double xi_max = 0.0;
    double newton_tol = 1e-14;
};

class ProfileTable {
public:
    ProfileKind kind = ProfileKind::Shock;
    std::vector<double> xi;
    std::vector<double> v, u, v_xi, u_xi;
    State left_state, right_state;
    /// Deviation columns; the accurate one is dev_left for xi < 0 (shock) and
    /// dev_right otherwise.
    std::vector<double> dev_left, dev_right;
    TailFit left_tail, right_tail;
    double tol = 0.0;
    bool truncated = false;
    double xi_reliable = 0.0;
    bool trivial = false;  // zero-strength wave: the constant left_state

    /// Profile value and exact derivatives at any abscissa (analytic tails
    /// beyond the table).
    ProfileSample sample(double s) const;

    /// Right-hand side of the first-order profile ODE v' = f(v) and f'(v).
    double rhs(double v) const;
    double rhs_derivative(double v) const;

    /// The two-point relation u(v) of the profile (line or Hugoniot chord).
    double velocity_of(double v) const;

    /// Local one-step defect max_i |Phi(v_i) - v_{i+1}| / h_i against a
    /// tight re-integration between neighbouring nodes.
    double ode_residual(double rtol = 1e-13) const;

    // profile constants
    GasParams gas;
    double speed = 0.0;  // -sigma_- for the boundary layer, sigma for the shock
    double v_anchor = 0.0;  // v_* (BL) or v^* (shock)
    double u_anchor = 0.0;

    /// Same right-hand side parameterized by the deviation from the left
    /// (right_dev = false) or right endpoint, exact in the tails.
    double rhs_from_dev(double dev, bool right_dev) const;

private:
    double interpolate_dev(std::size_t i, double s, bool right_dev) const;
};

ProfileTable integrate_boundary_layer(const WaveChart& chart, const GasParams& g,
                                      const ProfileOptions& opt = {});
ProfileTable integrate_shock(const WaveChart& chart, const GasParams& g,
                             const ProfileOptions& opt = {});

/// Exponential rates of the shock profile at its two endpoints from the
/// linearization of the profile ODE.
struct ShockRates {
    double left = 0.0;
    double right = 0.0;
};
ShockRates shock_endpoint_rates(const WaveChart& chart, const GasParams& g);

struct BurgersPoint {
    double w = 0.0, w_x = 0.0, w_xx = 0.0;
    double foot = 0.0;      // characteristic foot y with x = y + t w0(y)
    double residual = 0.0;  // |w - w0(x - w t)|
    int iterations = 0;
};

/// Exact smooth solution of w_t + w w_x = 0 with data
/// (w+ + w-)/2 + (w+ - w-)/2 tanh(x). `guess` (a w value) warm-starts Newton.
BurgersPoint burgers_eval(double t, double x, double w_minus, double w_plus,
                          double tol = 1e-14, const double* guess = nullptr);

struct RarefactionSample {
    double v = 0.0, u = 0.0;
    double v_x = 0.0, u_x = 0.0;
    double v_xx = 0.0, u_xx = 0.0;
    double v_t = 0.0, u_t = 0.0;  // time derivatives at fixed xi
    double w = 0.0;
};

class RarefactionEvaluator {
public:
    RarefactionEvaluator() = default;
    RarefactionEvaluator(const WaveChart& chart, const GasParams& g, double newton_tol = 1e-14);

    double w_minus = 0.0;
    double w_plus = 0.0;
    double sigma_minus = 0.0;
    State u_star;
    double newton_tol = 1e-14;
    GasParams gas;
    bool trivial = true;

    /// (v^R, u^R) at (t, xi) with xi-derivatives; warm_w carries the last
    /// Burgers value between calls along a grid sweep.
    RarefactionSample eval(double t, double xi, double* warm_w = nullptr) const;
};

}  // namespace wavelab
