#include "wavelab/shift.hpp"

#include <cmath>
#include <sstream>

#include "wavelab/errors.hpp"

namespace wavelab {

ShiftParams make_shift_params(const WaveChart& c, const GasParams& g) {
    ShiftParams p;
    const double v = c.u_mid.v;
    p.sigma_star = std::sqrt(-pressure_derivative(v, g));
    p.p_star = pressure(v, g);
    p.alpha_star = (g.gamma + 1.0) / (2.0 * g.gamma * p.sigma_star * p.p_star);
    p.M = 1.5 * p.sigma_star * p.sigma_star * p.sigma_star * p.alpha_star;
    p.delta_s = c.delta_s;
    return p;
}

double xdot(std::span<const double> u, std::span<const CompositeSample> bar,
            const CompositeField& field, const ShiftParams& p, double dx) {
    if (!field.chart().has_shock()) return 0.0;
    const double sigma = field.chart().sigma;
    const GasParams& g = field.gas();
    const std::size_t n = u.size();
    double i1 = 0.0;
    double i2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const CompositeSample& b = bar[i];
        if (b.shock.v_x == 0.0) continue;
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        const double a = field.weight_of(b.shock).a;
        const double du = u[i] - b.u;
        i1 += w * a * b.shock.u_x * du;
        i2 += w * a * pressure_derivative(b.v, g) * b.shock.v_x * du;
    }
    return -(p.M / p.delta_s) * dx * (i1 + i2 / sigma);
}

double ShiftIntegrator::advance(double t, double x, double xd, double dt) {
    history_.push_back({t, x, xd});
    if (!(std::abs(xd) <= limit_)) {
        std::ostringstream os;
        os << "shift blow-up at t = " << t << ": |X'| = " << std::abs(xd) << " > " << limit_;
        throw SolverAbort(os.str());
    }
    return x + dt * xd;
}

double shift_blowup_limit(const WaveChart& c) {
    return 10.0 * (std::abs(c.sigma) + std::abs(c.sigma_minus));
}

}  // namespace wavelab
