#include "wavelab/ode.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>

#include "wavelab/errors.hpp"

namespace wavelab {

namespace odeint = boost::numeric::odeint;

namespace {

using Dopri = odeint::runge_kutta_dopri5<double, double, double, double,
                                         odeint::vector_space_algebra>;

template <class Stepper>
void drive(Stepper stepper, const std::function<double(double)>& f, double y0,
           std::span<const double> outputs, const OdeOptions& opt,
           const std::function<bool(double)>& keep_going, OdeSolution& sol) {
    auto rhs = [&](const double& y, double& dydx, double) { dydx = f(y); };
    stepper.initialize(y0, outputs[0], opt.initial_step);
    sol.x.push_back(outputs[0]);
    sol.y.push_back(y0);
    std::size_t k = 1;
    while (k < outputs.size()) {
        while (stepper.current_time() < outputs[k]) {
            try {
                stepper.do_step(rhs);
            } catch (const odeint::step_adjustment_error&) {
                sol.truncated = true;
                return;
            }
            ++sol.steps;
            const double t = stepper.current_time();
            if (!std::isfinite(stepper.current_state()) ||
                stepper.current_time_step() < 1e-13 * (1.0 + std::abs(t))) {
                sol.truncated = true;
                return;
            }
        }
        while (k < outputs.size() && outputs[k] <= stepper.current_time()) {
            double y = 0.0;
            stepper.calc_state(outputs[k], y);
            if (keep_going && !keep_going(y)) {
                sol.truncated = true;
                return;
            }
            sol.x.push_back(outputs[k]);
            sol.y.push_back(y);
            ++k;
        }
    }
}

}  // namespace

OdeSolution integrate_autonomous(const std::function<double(double)>& f, double y0,
                                 std::span<const double> outputs, const OdeOptions& opt,
                                 const std::function<bool(double)>& keep_going) {
    if (outputs.empty()) throw PreconditionError("integrate_autonomous: no output abscissae");
    for (std::size_t i = 1; i < outputs.size(); ++i) {
        if (!(outputs[i] > outputs[i - 1])) {
            throw PreconditionError("integrate_autonomous: outputs must increase strictly");
        }
    }
    OdeSolution sol;
    sol.x.reserve(outputs.size());
    sol.y.reserve(outputs.size());
    if (opt.max_step > 0.0) {
        drive(odeint::make_dense_output(opt.atol, opt.rtol, opt.max_step, Dopri()), f, y0,
              outputs, opt, keep_going, sol);
    } else {
        drive(odeint::make_dense_output(opt.atol, opt.rtol, Dopri()), f, y0, outputs, opt,
              keep_going, sol);
    }
    return sol;
}

}  // namespace wavelab
