#include "wavelab/endstates.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "wavelab/errors.hpp"

namespace wavelab {

namespace {

double norm(const State& a, const State& b) { return std::hypot(a.v - b.v, a.u - b.u); }

void require_positive(const State& s, const char* name) {
    if (!(s.v > 0.0) || !(s.u > 0.0)) {
        std::ostringstream os;
        os << name << " must have v > 0 and u > 0, got (" << s.v << ", " << s.u << ")";
        throw PreconditionError(os.str());
    }
}

template <class F>
double bisect_increasing(F f, double lo, double hi, double target) {
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

State transonic_point(const State& u_minus, const GasParams& g) {
    require_positive(u_minus, "U-");
    const Regime r = regime(u_minus, g);
    if (r == Regime::Transonic) return u_minus;
    if (r == Regime::Supersonic) {
        throw PreconditionError("boundary value U- is supersonic; the chart needs u- < c(v-)");
    }
    const double slope = u_minus.u / u_minus.v;
    const double v = std::pow(std::sqrt(g.gamma) / slope, 2.0 / (g.gamma + 1.0));
    return State{v, slope * v};
}

State r1_point(const State& u_star, double v_target, const GasParams& g) {
    if (v_target < u_star.v) {
        throw PreconditionError("1-rarefaction opens volume: need v_target >= v_*");
    }
    if (v_target == u_star.v) return u_star;
    const double u = u_star.u - (lambda1_antiderivative(v_target, g) -
                                 lambda1_antiderivative(u_star.v, g));
    return State{v_target, u};
}

ShockEndState s2_point(const State& u_mid, double v_plus, const GasParams& g) {
    if (v_plus < u_mid.v) {
        throw PreconditionError("2-shock requires v+ > v^* (wrong side of the Hugoniot locus)");
    }
    if (v_plus == u_mid.v) {
        return ShockEndState{u_mid, std::sqrt(-pressure_derivative(u_mid.v, g))};
    }
    const double dv = v_plus - u_mid.v;
    const double sigma = std::sqrt(-pressure_difference(v_plus, u_mid.v, g) / dv);
    return ShockEndState{State{v_plus, u_mid.u - sigma * dv}, sigma};
}

std::pair<double, double> rankine_hugoniot_residuals(const State& left, const State& right,
                                                     double sigma, const GasParams& g) {
    const double dv = right.v - left.v;
    const double du = right.u - left.u;
    const double dp = pressure_difference(right.v, left.v, g);
    return {-sigma * dv - du, -sigma * du + dp};
}

double default_beta(double delta_s) { return delta_s > 0.0 ? 100.0 / delta_s : 100.0; }

WaveChart build_chart(const State& u_minus, double v_target_r1, double v_plus,
                      std::optional<double> beta, const GasParams& g) {
    g.validate();
    WaveChart c;
    c.u_minus = u_minus;
    c.u_star = transonic_point(u_minus, g);
    c.u_mid = r1_point(c.u_star, v_target_r1, g);
    const ShockEndState shock = s2_point(c.u_mid, v_plus, g);
    c.u_plus = shock.state;
    c.sigma = shock.sigma;
    c.sigma_minus = -u_minus.u / u_minus.v;
    c.delta_bl = norm(c.u_minus, c.u_star);
    c.delta_r = norm(c.u_star, c.u_mid);
    c.delta_s = norm(c.u_mid, c.u_plus);
    c.beta = beta.value_or(default_beta(c.delta_s));
    check_chart(c, g);
    return c;
}

void check_chart(const WaveChart& c, const GasParams& g) {
    require_positive(c.u_minus, "U-");
    require_positive(c.u_star, "U_*");
    require_positive(c.u_mid, "U^*");
    if (!(c.u_plus.v > 0.0)) throw PreconditionError("U+ must have v > 0");
    if (regime(c.u_minus, g) == Regime::Supersonic) {
        throw PreconditionError("boundary value U- is supersonic");
    }
    const double line = -c.u_minus.u / c.u_minus.v;
    if (std::abs(c.sigma_minus - line) > 1e-10 * std::abs(line) ||
        std::abs(-c.u_star.u / c.u_star.v - line) > 1e-10 * std::abs(line)) {
        throw PreconditionError("U_* is not on the boundary-layer line of U-");
    }
    if (regime(c.u_star, g) != Regime::Transonic) {
        throw PreconditionError("U_* is not transonic");
    }
    if (c.u_mid.v < c.u_star.v) throw PreconditionError("need v_* <= v^*");
    if (c.u_plus.v < c.u_mid.v) throw PreconditionError("entropy condition violated: need v^* <= v+");
    if (c.u_plus.v > c.u_mid.v && !(c.u_mid.u > c.u_plus.u)) {
        throw PreconditionError("entropy condition violated: need u^* > u+");
    }
    const auto [r1, r2] = rankine_hugoniot_residuals(c.u_mid, c.u_plus, c.sigma, g);
    if (std::abs(r1) > 1e-10 || std::abs(r2) > 1e-10) {
        throw PreconditionError("Rankine-Hugoniot relations not satisfied by (U^*, U+, sigma)");
    }
    if (!(c.beta > 0.0)) throw PreconditionError("shock offset beta must be positive");
}

double v_plus_for_shock_strength(const State& u_mid, double delta_s, const GasParams& g) {
    if (!(delta_s >= 0.0)) throw PreconditionError("shock strength must be non-negative");
    if (delta_s == 0.0) return u_mid.v;
    auto strength = [&](double vp) { return norm(u_mid, s2_point(u_mid, vp, g).state); };
    double hi = u_mid.v * (1.0 + delta_s);
    while (strength(hi) < delta_s) hi = u_mid.v + 2.0 * (hi - u_mid.v);
    return bisect_increasing(strength, u_mid.v, hi, delta_s);
}

double v_mid_for_rarefaction_strength(const State& u_star, double delta_r, const GasParams& g) {
    if (!(delta_r >= 0.0)) throw PreconditionError("rarefaction strength must be non-negative");
    if (delta_r == 0.0) return u_star.v;
    auto strength = [&](double vm) { return norm(u_star, r1_point(u_star, vm, g)); };
    double hi = u_star.v * (1.0 + delta_r);
    while (strength(hi) < delta_r) hi = u_star.v + 2.0 * (hi - u_star.v);
    return bisect_increasing(strength, u_star.v, hi, delta_r);
}

std::vector<std::pair<std::string, double>> WaveChart::to_record() const {
    return {{"v_minus", u_minus.v},   {"u_minus", u_minus.u},
            {"v_star", u_star.v},     {"u_star", u_star.u},
            {"v_mid", u_mid.v},       {"u_mid", u_mid.u},
            {"v_plus", u_plus.v},     {"u_plus", u_plus.u},
            {"sigma_minus", sigma_minus}, {"sigma", sigma},
            {"delta_bl", delta_bl},   {"delta_r", delta_r},
            {"delta_s", delta_s},     {"beta", beta}};
}

WaveChart WaveChart::from_record(const std::vector<std::pair<std::string, double>>& record) {
    std::map<std::string, double> m(record.begin(), record.end());
    auto at = [&](const char* key) {
        auto it = m.find(key);
        if (it == m.end()) throw ConfigError(std::string("chart record misses key ") + key);
        return it->second;
    };
    WaveChart c;
    c.u_minus = {at("v_minus"), at("u_minus")};
    c.u_star = {at("v_star"), at("u_star")};
    c.u_mid = {at("v_mid"), at("u_mid")};
    c.u_plus = {at("v_plus"), at("u_plus")};
    c.sigma_minus = at("sigma_minus");
    c.sigma = at("sigma");
    c.delta_bl = at("delta_bl");
    c.delta_r = at("delta_r");
    c.delta_s = at("delta_s");
    c.beta = at("beta");
    return c;
}

}  // namespace wavelab
