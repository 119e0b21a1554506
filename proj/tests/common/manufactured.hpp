#pragma once

// Travelling-wave manufactured solution for the inflow solver:
//   v = v0 + A sin(k xi - w t),  u = u0 + B cos(k xi - w t)
// with the body force that makes it exact.

#include <algorithm>
#include <cmath>
#include <vector>

#include "wavelab/gas.hpp"
#include "wavelab/solver.hpp"

namespace wavelab::testing {

struct Manufactured {
    GasParams gas{5.0 / 3.0};
    double sigma_minus = -1.0;
    double v0 = 2.0, u0 = 1.0;
    double A = 0.3, B = 0.2;
    double k = 1.0, w = 1.0;

    State exact(double t, double xi) const {
        const double ph = k * xi - w * t;
        return {v0 + A * std::sin(ph), u0 + B * std::cos(ph)};
    }

    State exact_rate(double t, double xi) const {
        const double ph = k * xi - w * t;
        return {-A * w * std::cos(ph), B * w * std::sin(ph)};
    }

    ForcingFn forcing() const {
        return [m = *this](double t, std::span<const double> xi, std::span<double> fv, std::span<double> fu) {
            for (std::size_t i = 1; i + 1 < xi.size(); ++i) {
                const double ph = m.k * xi[i] - m.w * t;
                const double s = std::sin(ph), c = std::cos(ph);
                const double v = m.v0 + m.A * s;
                const double v_x = m.A * m.k * c, v_t = -m.A * m.w * c;
                const double u_x = -m.B * m.k * s, u_t = m.B * m.w * s, u_xx = -m.B * m.k * m.k * c;
                const double p_x = pressure_derivative(v, m.gas) * v_x;
                fv[i] += v_t - m.sigma_minus * v_x - u_x;
                fu[i] += u_t - m.sigma_minus * u_x + p_x - (u_xx / v - u_x * v_x / (v * v));
            }
        };
    }

    BoundaryFn boundary(double xi) const {
        return [m = *this, xi](double t) { return BoundaryValue{m.exact(t, xi), m.exact_rate(t, xi)}; };
    }

    /// Integrates to t_end with a fixed step no larger than dt_max; returns the state.
    SolverState run(double length, int cells, double dt_max, double t_end) const {
        const Grid grid{length, cells};
        const InflowSolver solver(grid, gas, sigma_minus, boundary(0.0), boundary(length), {}, forcing());
        SolverState s;
        for (int i = 0; i < grid.size(); ++i) {
            const State e = exact(0.0, grid.node(i));
            s.v.push_back(e.v);
            s.u.push_back(e.u);
        }
        const long steps = static_cast<long>(std::ceil(t_end / dt_max - 1e-12));
        const double dt = t_end / steps;
        for (long n = 0; n < steps; ++n) solver.step(s, dt);
        s.t = t_end;
        return s;
    }

    double max_error(const SolverState& s, double length) const {
        const int n = static_cast<int>(s.v.size());
        double e = 0.0;
        for (int i = 0; i < n; ++i) {
            const State x = exact(s.t, length * i / (n - 1));
            e = std::max({e, std::abs(s.v[i] - x.v), std::abs(s.u[i] - x.u)});
        }
        return e;
    }
};

inline double max_difference(const SolverState& a, const SolverState& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        e = std::max({e, std::abs(a.v[i] - b.v[i]), std::abs(a.u[i] - b.u[i])});
    }
    return e;
}

}  // namespace wavelab::testing
