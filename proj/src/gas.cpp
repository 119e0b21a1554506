#include "wavelab/gas.hpp"

#include <cmath>
#include <string>

#include "wavelab/errors.hpp"

namespace wavelab {

void GasParams::validate() const {
    if (!(gamma > 1.0) || !std::isfinite(gamma)) {
        throw PreconditionError("adiabatic exponent must satisfy gamma > 1, got " +
                                std::to_string(gamma));
    }
    if (mu != 1.0) {
        throw PreconditionError("viscosity is normalized to mu = 1");
    }
}

double volume_power(double v, double exponent) {
    if (!std::isfinite(v) || v < kMinVolume) {
        throw DomainError("specific volume out of domain: v = " + std::to_string(v));
    }
    return std::exp(exponent * std::log(v));
}

double pressure(double v, const GasParams& g) { return volume_power(v, -g.gamma); }

double pressure_derivative(double v, const GasParams& g) {
    return -g.gamma * volume_power(v, -g.gamma - 1.0);
}

double pressure_second_derivative(double v, const GasParams& g) {
    return g.gamma * (g.gamma + 1.0) * volume_power(v, -g.gamma - 2.0);
}

double internal_energy(double v, const GasParams& g) {
    return volume_power(v, 1.0 - g.gamma) / (g.gamma - 1.0);
}

double sound_speed(double v, const GasParams& g) {
    return std::sqrt(g.gamma) * volume_power(v, -(g.gamma - 1.0) / 2.0);
}

double lambda1(double v, const GasParams& g) {
    return -std::sqrt(g.gamma) * volume_power(v, -(g.gamma + 1.0) / 2.0);
}

double lambda1_derivative(double v, const GasParams& g) {
    return std::sqrt(g.gamma) * (g.gamma + 1.0) / 2.0 * volume_power(v, -(g.gamma + 3.0) / 2.0);
}

double lambda1_second_derivative(double v, const GasParams& g) {
    return -std::sqrt(g.gamma) * (g.gamma + 1.0) * (g.gamma + 3.0) / 4.0 *
           volume_power(v, -(g.gamma + 5.0) / 2.0);
}

double lambda1_inverse(double w, const GasParams& g) {
    if (!(w < 0.0)) {
        throw DomainError("lambda1 is strictly negative; cannot invert w = " + std::to_string(w));
    }
    const double ratio = -w / std::sqrt(g.gamma);
    return std::exp(-2.0 / (g.gamma + 1.0) * std::log(ratio));
}

double lambda1_antiderivative(double v, const GasParams& g) {
    return 2.0 * std::sqrt(g.gamma) / (g.gamma - 1.0) * volume_power(v, -(g.gamma - 1.0) / 2.0);
}

double riemann_invariant_z1(const State& s, const GasParams& g) {
    return s.u + lambda1_antiderivative(s.v, g);
}

Regime regime(const State& s, const GasParams& g) {
    const double c = sound_speed(s.v, g);
    if (std::abs(s.u - c) <= kTransonicTolerance * c) return Regime::Transonic;
    return s.u < c ? Regime::Subsonic : Regime::Supersonic;
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::Subsonic: return "subsonic";
        case Regime::Transonic: return "transonic";
        case Regime::Supersonic: return "supersonic";
    }
    return "unknown";
}

double binomial_remainder(double a, double x) {
    if (!(x > -1.0)) throw DomainError("binomial remainder requires x > -1");
    if (std::abs(x) < 0.125) {
        // sum_{k>=2} binom(a,k) x^k
        double coeff = a;
        double xk = x;
        double sum = 0.0;
        for (int k = 2; k < 200; ++k) {
            coeff *= (a - k + 1) / k;
            xk *= x;
            const double term = coeff * xk;
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return std::expm1(a * std::log1p(x)) - a * x;
}

double relative_pressure(double v, double w, const GasParams& g) {
    (void)volume_power(v, 1.0);
    const double x = (v - w) / w;
    return pressure(w, g) * binomial_remainder(-g.gamma, x);
}

double relative_internal_energy(double v, double w, const GasParams& g) {
    (void)volume_power(v, 1.0);
    const double x = (v - w) / w;
    return internal_energy(w, g) * binomial_remainder(1.0 - g.gamma, x);
}

double pressure_difference(double v, double w, const GasParams& g) {
    (void)volume_power(v, 1.0);
    const double x = (v - w) / w;
    return pressure(w, g) * std::expm1(-g.gamma * std::log1p(x));
}

RelativeQuantities relative_quantities(const State& a, const State& b, const GasParams& g) {
    RelativeQuantities r;
    r.p_rel = relative_pressure(a.v, b.v, g);
    r.q_rel = relative_internal_energy(a.v, b.v, g);
    const double du = a.u - b.u;
    r.eta_rel = r.q_rel + 0.5 * du * du;
    return r;
}

}  // namespace wavelab
