#pragma once

// gamma-law barotropic closure p(v) = v^-gamma in Lagrangian variables,
// normalized viscosity mu = 1.

#include <string_view>

namespace wavelab {

struct GasParams {
    double gamma = 5.0 / 3.0;
    double mu = 1.0;

    /// Throws PreconditionError unless gamma > 1 and mu == 1.
    void validate() const;
};

/// A point (v, u) of phase space: specific volume and velocity.
struct State {
    double v = 1.0;
    double u = 0.0;
};

/// Smallest specific volume accepted by the closure.
inline constexpr double kMinVolume = 1e-12;

/// v^e via exp/log, DomainError for v < kMinVolume or non-finite v.
double volume_power(double v, double exponent);

double pressure(double v, const GasParams& g);
double pressure_derivative(double v, const GasParams& g);
double pressure_second_derivative(double v, const GasParams& g);
/// Q(v) = v^(1-gamma)/(gamma-1), so that Q' = -p.
double internal_energy(double v, const GasParams& g);

double sound_speed(double v, const GasParams& g);
/// First characteristic speed -sqrt(-p'(v)), strictly negative and increasing in v.
double lambda1(double v, const GasParams& g);
double lambda1_derivative(double v, const GasParams& g);
double lambda1_second_derivative(double v, const GasParams& g);
/// Exact inverse of lambda1; DomainError for w >= 0.
double lambda1_inverse(double w, const GasParams& g);
/// Closed-form antiderivative of lambda1, (2 sqrt(gamma)/(gamma-1)) v^(-(gamma-1)/2).
double lambda1_antiderivative(double v, const GasParams& g);
/// 1-Riemann invariant z1 = u + int^v lambda1.
double riemann_invariant_z1(const State& s, const GasParams& g);

enum class Regime { Subsonic, Transonic, Supersonic };

inline constexpr double kTransonicTolerance = 1e-10;

Regime regime(const State& s, const GasParams& g);
std::string_view to_string(Regime r);

/// (1+x)^a - 1 - a x without cancellation for small |x|; requires x > -1.
double binomial_remainder(double a, double x);

/// F(v|w) = F(v) - F(w) - F'(w)(v - w) for F = p and F = Q, evaluated
/// in a cancellation-free form so that the small-|v-w| regime keeps full
/// relative precision.
double relative_pressure(double v, double w, const GasParams& g);
double relative_internal_energy(double v, double w, const GasParams& g);
/// p(v) - p(w) with relative precision retained as v -> w.
double pressure_difference(double v, double w, const GasParams& g);

struct RelativeQuantities {
    double p_rel = 0.0;
    double q_rel = 0.0;
    double eta_rel = 0.0;
};

/// Relative pressure, internal energy and entropy eta(a|b) = Q(v_a|v_b) + (u_a-u_b)^2/2.
RelativeQuantities relative_quantities(const State& a, const State& b, const GasParams& g);

}  // namespace wavelab
