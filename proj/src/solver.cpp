#include "wavelab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wavelab/errors.hpp"

namespace wavelab {

std::vector<double> Grid::nodes() const {
    std::vector<double> x(size());
    for (int i = 0; i < size(); ++i) x[i] = node(i);
    return x;
}

void Grid::validate() const {
    if (cells < 16) throw PreconditionError("grid needs at least 16 cells");
    if (!(length > 0.0) || !std::isfinite(length)) throw PreconditionError("grid length must be positive");
}

InflowSolver::InflowSolver(Grid grid, GasParams gas, double sigma_minus, BoundaryFn left,
                           BoundaryFn right, SolverOptions opt, ForcingFn forcing)
    : grid_(grid),
      gas_(gas),
      sigma_minus_(sigma_minus),
      left_(std::move(left)),
      right_(std::move(right)),
      opt_(opt),
      forcing_(std::move(forcing)),
      xi_(grid.nodes()) {
    grid_.validate();
}

void InflowSolver::rhs(double t, std::span<const double> v, std::span<const double> u,
                       std::span<double> dv, std::span<double> du) const {
    const int n = grid_.size();
    const double dx = grid_.dx();
    const double inv2dx = 0.5 / dx;
    const double invdx2 = 1.0 / (dx * dx);
    const double sm = sigma_minus_;
    const double gamma = gas_.gamma;
    // pressure is needed at every node; reuse the work buffer
    work_.resize(n);
    if (opt_.with_pressure) {
        for (int i = 0; i < n; ++i) {
            if (!(v[i] > kMinVolume)) {
                std::ostringstream os;
                os << "specific volume lost positivity at xi = " << xi_[i] << " (v = " << v[i] << ")";
                throw SolverAbort(os.str());
            }
            work_[i] = std::exp(-gamma * std::log(v[i]));
        }
    }
    for (int i = 1; i < n - 1; ++i) {
        const double vx = (v[i + 1] - v[i - 1]) * inv2dx;
        const double ux = (u[i + 1] - u[i - 1]) * inv2dx;
        dv[i] = sm * vx + ux;
        double r = sm * ux;
        if (opt_.with_pressure) r -= (work_[i + 1] - work_[i - 1]) * inv2dx;
        if (opt_.with_viscosity) {
            const double fr = (u[i + 1] - u[i]) / (0.5 * (v[i + 1] + v[i]));
            const double fl = (u[i] - u[i - 1]) / (0.5 * (v[i] + v[i - 1]));
            r += (fr - fl) * invdx2;
        }
        du[i] = r;
    }
    if (forcing_) {
        forcing_(t, xi_, dv, du);
    }
    const BoundaryValue bl = left_(t);
    const BoundaryValue br = right_(t);
    dv[0] = bl.rate.v;
    du[0] = bl.rate.u;
    dv[n - 1] = br.rate.v;
    du[n - 1] = br.rate.u;
}

double InflowSolver::stable_dt(std::span<const double> v) const {
    const double dx = grid_.dx();
    const double vmin = *std::min_element(v.begin(), v.end());
    double lmax = 0.0;
    if (opt_.with_pressure) {
        const double sg = std::sqrt(gas_.gamma);
        for (double x : v) lmax = std::max(lmax, sg * std::exp(-0.5 * (gas_.gamma + 1.0) * std::log(x)));
    }
    const double smax = std::abs(sigma_minus_) + lmax;
    double dt = smax > 0.0 ? opt_.cfl_advective * dx / smax : 1e300;
    if (opt_.with_viscosity) dt = std::min(dt, opt_.cfl_viscous * dx * dx * vmin);
    return dt;
}

void InflowSolver::impose_boundary(SolverState& s) const {
    const State l = left_(s.t).value;
    const State r = right_(s.t).value;
    s.v.front() = l.v;
    s.u.front() = l.u;
    s.v.back() = r.v;
    s.u.back() = r.u;
}

void InflowSolver::step(SolverState& s, double dt) const {
    if (!(dt >= opt_.dt_min)) {
        throw SolverAbort("time step underflow (dt = " + std::to_string(dt) + ")");
    }
    const std::size_t n = s.v.size();
    std::vector<double> k1v(n), k1u(n), k2v(n), k2u(n), k3v(n), k3u(n), k4v(n), k4u(n), tv(n), tu(n);
    auto stage = [&](const std::vector<double>& kv, const std::vector<double>& ku, double c) {
        for (std::size_t i = 0; i < n; ++i) {
            tv[i] = s.v[i] + c * kv[i];
            tu[i] = s.u[i] + c * ku[i];
        }
    };
    rhs(s.t, s.v, s.u, k1v, k1u);
    stage(k1v, k1u, 0.5 * dt);
    rhs(s.t + 0.5 * dt, tv, tu, k2v, k2u);
    stage(k2v, k2u, 0.5 * dt);
    rhs(s.t + 0.5 * dt, tv, tu, k3v, k3u);
    stage(k3v, k3u, dt);
    rhs(s.t + dt, tv, tu, k4v, k4u);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        s.v[i] += w * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        s.u[i] += w * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
    }
    s.t += dt;
    s.dt = dt;
    ++s.steps;
    impose_boundary(s);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s.v[i] > 0.0) || !std::isfinite(s.u[i])) {
            std::ostringstream os;
            os << "positivity lost at t = " << s.t << ", node " << i;
            throw SolverAbort(os.str());
        }
    }
}

double discrete_h1_norm(std::span<const double> f, std::span<const double> g, double dx) {
    double l2 = 0.0;
    double d2 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        l2 += f[i] * f[i] + g[i] * g[i];
        if (i + 1 < f.size()) {
            const double a = f[i + 1] - f[i];
            const double b = g[i + 1] - g[i];
            d2 += a * a + b * b;
        }
    }
    return std::sqrt(l2 * dx + d2 / dx);
}

SolverState initial_data(const CompositeField& field, const PerturbationSpec& pert,
                         const Grid& grid) {
    grid.validate();
    if (!(pert.eps0 >= 0.0)) throw PreconditionError("perturbation size must be non-negative");
    if (!(pert.window_lo > 0.0 && pert.window_lo < pert.window_hi && pert.window_hi < 1.0)) {
        throw PreconditionError("perturbation window must satisfy 0 < lo < hi < 1");
    }
    SolverState s;
    const std::vector<double> xi = grid.nodes();
    std::vector<CompositeSample> bar;
    field.eval_grid(0.0, xi, bar);
    const int n = grid.size();
    s.v.resize(n);
    s.u.resize(n);
    for (int i = 0; i < n; ++i) {
        s.v[i] = bar[i].v;
        s.u[i] = bar[i].u;
    }
    s.shift = field.shift();
    if (pert.eps0 == 0.0) return s;

    double cv = 1.0, cu = 1.0;
    if (pert.shape == "v") {
        cu = 0.0;
    } else if (pert.shape == "u") {
        cv = 0.0;
    } else if (pert.shape == "two_wave") {
        cu = -std::sqrt(-pressure_derivative(field.chart().u_mid.v, field.gas()));
    } else if (pert.shape != "both") {
        throw PreconditionError("unknown perturbation shape '" + pert.shape + "'");
    }
    const double a = pert.window_lo * grid.length;
    const double b = pert.window_hi * grid.length;
    std::vector<double> pv(n, 0.0), pu(n, 0.0);
    for (int i = 1; i < n - 1; ++i) {
        const double x = xi[i];
        if (x <= a || x >= b) continue;
        const double z = (2.0 * x - a - b) / (b - a);
        const double bump = std::exp(1.0 - 1.0 / (1.0 - z * z));
        pv[i] = cv * bump;
        pu[i] = cu * bump;
    }
    const double norm = discrete_h1_norm(pv, pu, grid.dx());
    if (norm == 0.0) throw PreconditionError("perturbation window contains no grid node");
    const double scale = pert.eps0 / norm;
    for (int i = 0; i < n; ++i) {
        s.v[i] += scale * pv[i];
        s.u[i] += scale * pu[i];
        if (!(s.v[i] > 0.0)) throw PreconditionError("perturbation breaks positivity of v");
    }
    return s;
}

BoundaryFn constant_boundary(State s) {
    return [s](double) { return BoundaryValue{s, State{0.0, 0.0}}; };
}

BoundaryFn composite_boundary(const CompositeField& field, double xi) {
    const CompositeField* f = &field;
    return [f, xi](double t) {
        const CompositeSample c = f->eval(t, xi);
        return BoundaryValue{State{c.v, c.u}, State{c.v_t, c.u_t}};
    };
}

std::vector<double> effective_velocity(const SolverState& s, double dx) {
    const std::size_t n = s.v.size();
    std::vector<double> lv(n), h(n);
    for (std::size_t i = 0; i < n; ++i) lv[i] = std::log(s.v[i]);
    for (std::size_t i = 1; i + 1 < n; ++i) h[i] = s.u[i] - (lv[i + 1] - lv[i - 1]) / (2.0 * dx);
    h[0] = s.u[0] - (-3.0 * lv[0] + 4.0 * lv[1] - lv[2]) / (2.0 * dx);
    h[n - 1] = s.u[n - 1] - (3.0 * lv[n - 1] - 4.0 * lv[n - 2] + lv[n - 3]) / (2.0 * dx);
    return h;
}

}  // namespace wavelab
