#pragma once

// Small regression helpers used for decay-shape certification.

#include <functional>
#include <span>

#include "wavelab/profiles.hpp"

namespace wavelab {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y ~ slope x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Nonlinear least squares of log y_i against log(C * model(c, t_i)) over
/// positive samples: C is eliminated in closed form and c is found by Brent
/// minimisation on [c_lo, c_hi]. `envelope` is the smallest amplitude with
/// envelope * model(c, t_i) >= y_i on every sample.
struct EnvelopeFit {
    double c = 0.0;
    double amplitude = 0.0;
    double envelope = 0.0;
    double rms_log = 0.0;
    bool at_bound = false;  // optimum sits on an end of the search bracket
};

EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> y,
                         const std::function<double(double c, double t)>& model, double c_lo,
                         double c_hi);

/// Log-log exponents of the boundary-layer tail: the deviation v_* - v^BL and
/// its first two derivatives against 1 + delta_BL xi over [xi_lo, xi_hi].
struct BoundaryLayerDecay {
    double k0 = 0.0, k1 = 0.0, k2 = 0.0;
    double xi_lo = 0.0, xi_hi = 0.0;
};
BoundaryLayerDecay fit_boundary_layer_decay(const ProfileTable& bl, double delta_bl,
                                            double xi_lo, double xi_hi, int samples = 200);

/// Exponential tail rates of the shock table fitted on |zeta| in [z_lo, z_hi].
struct ShockDecay {
    double left = 0.0, right = 0.0;
    double z_lo = 0.0, z_hi = 0.0;
};
ShockDecay fit_shock_decay(const ProfileTable& shock, double z_lo, double z_hi, int samples = 200);

}  // namespace wavelab
