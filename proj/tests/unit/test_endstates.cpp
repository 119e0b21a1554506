#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "doctest.h"
#include "wavelab/endstates.hpp"
#include "wavelab/errors.hpp"

using namespace wavelab;

namespace {

const GasParams kGas{5.0 / 3.0};

double bisect(auto f, double lo, double hi) {
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((f(lo) < 0) == (f(mid) < 0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("transonic point against bisection") {
    const State um{1.0, 1.0};
    const double v = bisect([&](double s) { return (um.u / um.v) * s - sound_speed(s, kGas); }, 1.0, 10.0);
    const State us = transonic_point(um, kGas);
    CHECK(us.v == doctest::Approx(v).epsilon(1e-13));
    CHECK(us.v == doctest::Approx(1.2112).epsilon(1e-4));
    CHECK(us.u == doctest::Approx(1.2112).epsilon(1e-4));
    CHECK(us.u / us.v == doctest::Approx(um.u / um.v).epsilon(1e-15));
    CHECK(regime(us, kGas) == Regime::Transonic);

    const State already{1.0, sound_speed(1.0, kGas)};
    const State same = transonic_point(already, kGas);
    CHECK(same.v == already.v);
    CHECK(same.u == already.u);
    CHECK_THROWS_AS(transonic_point({1.0, 3.0}, kGas), PreconditionError);
}

TEST_CASE("r1 point keeps the Riemann invariant and matches quadrature") {
    const State us = transonic_point({1.0, 1.0}, kGas);
    for (double f : {1.01, 1.1, 1.5}) {
        const State m = r1_point(us, f * us.v, kGas);
        CHECK(std::abs(riemann_invariant_z1(m, kGas) - riemann_invariant_z1(us, kGas)) < 1e-10);
    }
    const State m = r1_point(us, 1.3, kGas);
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [](double s) { return lambda1(s, kGas); }, us.v, 1.3, 15, 1e-14);
    CHECK(std::abs(m.u - (us.u - integral)) < 1e-10);
    CHECK(m.u > us.u);
    const State d = r1_point(us, us.v, kGas);
    CHECK(d.v == us.v);
    CHECK(d.u == us.u);
    CHECK_THROWS_AS(r1_point(us, 0.9 * us.v, kGas), PreconditionError);
}

TEST_CASE("s2 point against a 2D Newton solve of Rankine-Hugoniot") {
    const State us = transonic_point({1.0, 1.0}, kGas);
    const State mid = r1_point(us, 1.3, kGas);
    const double vp = mid.v + 0.05;
    const ShockEndState s = s2_point(mid, vp, kGas);

    // unknowns (u+, sigma), equations -sigma dv - du = 0, -sigma du + dp = 0
    double up = mid.u - 0.1;
    double sig = 1.0;
    const double dv = vp - mid.v;
    const double dp = pressure(vp, kGas) - pressure(mid.v, kGas);
    for (int it = 0; it < 50; ++it) {
        const double du = up - mid.u;
        const double f1 = -sig * dv - du;
        const double f2 = -sig * du + dp;
        // Jacobian d(f1,f2)/d(up,sig)
        const double a = -1.0, b = -dv, c = -sig, d = -du;
        const double det = a * d - b * c;
        up -= (d * f1 - b * f2) / det;
        sig -= (-c * f1 + a * f2) / det;
    }
    CHECK(std::abs(s.state.u - up) < 1e-10);
    CHECK(std::abs(s.sigma - sig) < 1e-10);
    const auto [r1, r2] = rankine_hugoniot_residuals(mid, s.state, s.sigma, kGas);
    CHECK(std::abs(r1) < 1e-12);
    CHECK(std::abs(r2) < 1e-12);
    CHECK(s.state.u < mid.u);

    const ShockEndState lim = s2_point(mid, mid.v * (1 + 1e-9), kGas);
    CHECK(lim.sigma == doctest::Approx(std::sqrt(-pressure_derivative(mid.v, kGas))).epsilon(1e-8));
    CHECK_THROWS_AS(s2_point(mid, mid.v - 0.01, kGas), PreconditionError);
}

TEST_CASE("shock speed decreases along the Hugoniot locus") {
    const State mid{1.3, 1.3};
    double prev = s2_point(mid, 1.3001, kGas).sigma;
    for (double vp = 1.31; vp < 3.0; vp += 0.01) {
        const double s = s2_point(mid, vp, kGas).sigma;
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("full chart") {
    const WaveChart c = build_chart({1.0, 1.0}, 1.3, 1.35, std::nullopt, kGas);
    CHECK(c.sigma_minus == -1.0);
    CHECK(c.u_minus.v < c.u_star.v);
    CHECK(c.u_star.v < c.u_mid.v);
    CHECK(c.u_mid.v < c.u_plus.v);
    CHECK(c.u_minus.u < c.u_star.u);
    CHECK(c.u_star.u < c.u_mid.u);
    CHECK(c.u_mid.u > c.u_plus.u);
    CHECK(c.delta_bl == std::hypot(c.u_minus.v - c.u_star.v, c.u_minus.u - c.u_star.u));
    CHECK(c.delta_r == std::hypot(c.u_star.v - c.u_mid.v, c.u_star.u - c.u_mid.u));
    CHECK(c.delta_s == std::hypot(c.u_mid.v - c.u_plus.v, c.u_mid.u - c.u_plus.u));
    CHECK(c.beta == doctest::Approx(100.0 / c.delta_s));
    CHECK(c.sigma == doctest::Approx(0.88735).epsilon(1e-5));
    CHECK(c.u_plus.u == doctest::Approx(1.25152).epsilon(1e-5));

    const WaveChart c10 = build_chart({1.0, 1.0}, c.u_star.v, c.u_star.v + 0.05, 100.0, kGas);
    CHECK(c10.delta_r == 0.0);
    CHECK_FALSE(c10.has_rarefaction());
    CHECK(c10.has_shock());

    CHECK_THROWS_AS(build_chart({1.0, 1.0}, 1.3, 1.25, std::nullopt, kGas), PreconditionError);
    CHECK_THROWS_AS(build_chart({1.0, 1.0}, 1.3, 1.35, -1.0, kGas), PreconditionError);

    const WaveChart back = WaveChart::from_record(c.to_record());
    CHECK(back.u_plus.u == c.u_plus.u);
    CHECK(back.beta == c.beta);
}

TEST_CASE("strength inverses") {
    const State us = transonic_point({1.0, 1.0}, kGas);
    const double vm = v_mid_for_rarefaction_strength(us, 0.05, kGas);
    const State m = r1_point(us, vm, kGas);
    CHECK(std::hypot(m.v - us.v, m.u - us.u) == doctest::Approx(0.05).epsilon(1e-10));
    const double vp = v_plus_for_shock_strength(m, 0.025, kGas);
    const State p = s2_point(m, vp, kGas).state;
    CHECK(std::hypot(p.v - m.v, p.u - m.u) == doctest::Approx(0.025).epsilon(1e-10));
}
