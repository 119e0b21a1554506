#pragma once

// Functionals of the perturbation U - Ubar evaluated on solver snapshots,
// profile-only wave-interaction integrals and the weighted Poincare check.

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wavelab/shift.hpp"
#include "wavelab/solver.hpp"
#include "wavelab/superpose.hpp"

namespace wavelab {

struct DiagnosticsFrame {
    double t = 0.0;
    double weighted_rel_entropy = 0.0;
    double rel_entropy = 0.0;
    double g_s = 0.0, g_1 = 0.0, g_2 = 0.0, g_bl = 0.0, g_r = 0.0, g_v = 0.0;
    double d_v1 = 0.0, d_u1 = 0.0, d_u2 = 0.0;
    double xdot_sq = 0.0;
    double interaction1 = 0.0, interaction2 = 0.0, interaction3 = 0.0;
    double interaction_l2 = 0.0;
    std::array<double, 5> j_bd{};
    double sup_perturbation = 0.0;
    double g_val = 0.0;
    // appended columns
    double shift = 0.0;
    double xdot = 0.0;
    double h1_sq = 0.0;          // ||U - Ubar||_{H1}^2
    double d_v = 0.0;            // int |(p - pbar)_x|^2
    double d_u1_plain = 0.0;     // int |(u - ubar)_x|^2
    double d_u2_plain = 0.0;     // int |(u - ubar)_xx|^2 (interior)
    double d_u2_boundary = 0.0;  // boundary-node part of D_u2, kept out of d_u2
    double poincare_lhs = 0.0;
    double poincare_rhs = 0.0;

    static const std::vector<std::string>& column_names();
    std::vector<double> values() const;
};

struct Interactions {
    double i1 = 0.0, i2 = 0.0, i3 = 0.0;
    double l2 = 0.0;  // int (R1 + R2 + R3)^2
};

/// Pointwise integrands R1, R2, R3 at one composite sample.
std::array<double, 3> interaction_densities(const CompositeField& f, const CompositeSample& s);

/// Profile-only interaction integrals by adaptive Gauss-Kronrod quadrature
/// over [0, infinity) split at the wave locations.
Interactions wave_interactions(double t, const CompositeField& f, double tol = 1e-10);

struct PoincareResult {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// lhs = int_c^d |f - mean f|^2, rhs = 1/2 int_c^d (y - c)(d - y) |f'|^2 for
/// an analytic f with derivative df.
PoincareResult poincare_check(const std::function<double(double)>& f,
                              const std::function<double(double)>& df, double c, double d,
                              double tol = 1e-13);

/// Same from samples at the n Chebyshev-Gauss-Lobatto points of [c, d]
/// (ordered from c to d); the derivative comes from the Chebyshev interpolant.
PoincareResult poincare_check(std::span<const double> samples, double c, double d);

/// Chebyshev-Gauss-Lobatto nodes of [c, d] in increasing order.
std::vector<double> chebyshev_lobatto_nodes(int n, double c, double d);

/// The weighted inequality for the live perturbation f = (u - ubar) o y^{-1}
/// on [y0, 1], evaluated in the xi variable on the solver grid.
PoincareResult poincare_on_solution(std::span<const double> u,
                                    std::span<const CompositeSample> bar,
                                    const CompositeField& f, double dx);

/// J1..J5 at xi = 0.
std::array<double, 5> boundary_terms(const SolverState& s, std::span<const CompositeSample> bar,
                                     const CompositeField& f, double dx);

struct FrameOptions {
    bool interactions = true;
    bool poincare = true;
    double interaction_tol = 1e-10;
};

DiagnosticsFrame compute_frame(const SolverState& s, std::span<const CompositeSample> bar,
                               const CompositeField& f, double xdot_value, double dx,
                               const FrameOptions& opt = {});

}  // namespace wavelab
