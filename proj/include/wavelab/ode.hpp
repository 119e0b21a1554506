#pragma once

// Scalar autonomous ODE driver on top of Boost.Odeint's dense-output
// Dormand-Prince 5(4) stepper.

#include <functional>
#include <span>
#include <vector>

namespace wavelab {

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 0.0;
    double initial_step = 1e-3;
    double max_step = 0.0;  // 0 = unbounded
};

struct OdeSolution {
    std::vector<double> x;
    std::vector<double> y;
    bool truncated = false;  // stepper gave up before the last requested abscissa
    long steps = 0;
};

/// Integrates y' = f(y) from (x0, y0) and records y at the increasing
/// abscissae `outputs` (outputs[0] must equal x0). Integration stops early
/// and sets `truncated` when the step size collapses or when `keep_going`
/// returns false for a recorded value.
OdeSolution integrate_autonomous(const std::function<double(double)>& f, double y0,
                                 std::span<const double> outputs, const OdeOptions& opt,
                                 const std::function<bool(double)>& keep_going = {});

}  // namespace wavelab
