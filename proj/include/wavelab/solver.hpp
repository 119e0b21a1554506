#pragma once

// Method-of-lines finite differences for the inflow problem in the boundary
// frame:
//   v_t - sigma_- v_x - u_x = 0
//   u_t - sigma_- u_x + p(v)_x = (u_x / v)_x
// on [0, L] with Dirichlet data at both ends, advanced by classical RK4.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wavelab/gas.hpp"
#include "wavelab/superpose.hpp"

namespace wavelab {

struct Grid {
    double length = 1.0;
    int cells = 16;

    double dx() const { return length / cells; }
    double node(int i) const { return i * dx(); }
    int size() const { return cells + 1; }
    std::vector<double> nodes() const;
    void validate() const;
};

struct SolverState {
    double t = 0.0;
    std::vector<double> v, u;
    double shift = 0.0;
    long steps = 0;
    double dt = 0.0;
};

struct BoundaryValue {
    State value;
    State rate;  // time derivative of the prescribed value
};
using BoundaryFn = std::function<BoundaryValue(double t)>;

/// Optional body force added to (v_t, u_t) at interior nodes.
using ForcingFn = std::function<void(double t, std::span<const double> xi, std::span<double> fv,
                                     std::span<double> fu)>;

struct SolverOptions {
    double cfl_advective = 0.4;
    double cfl_viscous = 0.4;
    double dt_min = 1e-12;
    bool with_pressure = true;
    bool with_viscosity = true;
};

class InflowSolver {
public:
    InflowSolver(Grid grid, GasParams gas, double sigma_minus, BoundaryFn left, BoundaryFn right,
                 SolverOptions opt = {}, ForcingFn forcing = {});

    const Grid& grid() const { return grid_; }
    const SolverOptions& options() const { return opt_; }
    double sigma_minus() const { return sigma_minus_; }

    /// Semi-discrete time derivative. Boundary nodes receive the rate of the
    /// prescribed boundary value.
    void rhs(double t, std::span<const double> v, std::span<const double> u, std::span<double> dv,
             std::span<double> du) const;

    /// min(cfl_a dx / s_max, cfl_v dx^2 v_min), s_max = |sigma_-| + max |lambda1(v)|.
    double stable_dt(std::span<const double> v) const;

    /// One RK4 step of size dt; re-imposes both Dirichlet values and checks
    /// positivity (SolverAbort on failure).
    void step(SolverState& s, double dt) const;

    void impose_boundary(SolverState& s) const;

private:
    Grid grid_;
    GasParams gas_;
    double sigma_minus_;
    BoundaryFn left_, right_;
    SolverOptions opt_;
    ForcingFn forcing_;
    std::vector<double> xi_;
    mutable std::vector<double> work_;
};

/// Compactly supported C-infinity bump perturbation.
struct PerturbationSpec {
    double eps0 = 0.0;
    /// Support window as fractions of L.
    double window_lo = 0.125;
    double window_hi = 0.25;
    /// "both": equal bump on v and u; "v"/"u": one component; "two_wave": the
    /// 2-characteristic direction (phi_u = -sqrt(-p'(v^*)) phi_v).
    std::string shape = "both";
};

/// Discrete H1 norm sqrt(sum dx (f^2 + g^2) + sum (df^2 + dg^2)/dx).
double discrete_h1_norm(std::span<const double> f, std::span<const double> g, double dx);

/// U0 = Ubar(0, .) + phi with ||phi||_H1 = eps0 and phi(0) = 0.
SolverState initial_data(const CompositeField& field, const PerturbationSpec& pert,
                         const Grid& grid);

/// Boundary providers: U- on the left, Ubar(t, L) on the right.
BoundaryFn constant_boundary(State s);
BoundaryFn composite_boundary(const CompositeField& field, double xi);

/// h = u - (ln v)_x with second-order one-sided stencils at the ends.
std::vector<double> effective_velocity(const SolverState& s, double dx);

}  // namespace wavelab
