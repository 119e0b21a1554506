#include <cmath>

#include "doctest.h"
#include "wavelab/superpose.hpp"

using namespace wavelab;

namespace {

const GasParams kGas{5.0 / 3.0};

const CompositeField& preset() {
    static const CompositeField f(build_chart({1.0, 1.0}, 1.3, 1.35, std::nullopt, kGas), kGas);
    return f;
}

// Momentum residual of the composite wave from centred differences in t and xi.
double momentum_residual(const CompositeField& f, double t, double xi, double h) {
    const double sm = f.chart().sigma_minus;
    auto u = [&](double tt, double x) { return f.eval(tt, x).u; };
    auto v = [&](double tt, double x) { return f.eval(tt, x).v; };
    auto flux = [&](double x) {
        const double ux = (u(t, x + h) - u(t, x - h)) / (2 * h);
        return ux / v(t, x);
    };
    const double u_t = (u(t + h, xi) - u(t - h, xi)) / (2 * h);
    const double u_x = (u(t, xi + h) - u(t, xi - h)) / (2 * h);
    const double p_x = (pressure(v(t, xi + h), kGas) - pressure(v(t, xi - h), kGas)) / (2 * h);
    const double visc = (flux(xi + h) - flux(xi - h)) / (2 * h);
    return u_t - sm * u_x + p_x - visc;
}

}  // namespace

TEST_CASE("composite matches the end states and the boundary value") {
    const CompositeField& f = preset();
    const WaveChart& c = f.chart();
    const CompositeSample left = f.eval(0.0, 0.0);
    CHECK(std::abs(left.v - c.u_minus.v) < 1e-12);
    CHECK(std::abs(left.u - c.u_minus.u) < 1e-12);
    // far field: U+ plus the algebraic boundary-layer tail
    const CompositeSample far = f.eval(0.0, c.beta + 5000.0);
    CHECK(far.bl.dev_right > 0.0);
    CHECK(std::abs(far.v - (c.u_plus.v - far.bl.dev_right)) < 1e-12);
    CHECK(std::abs(far.u - (c.u_plus.u - (far.bl.u - c.u_star.u) * -1.0)) < 1e-12);
}

TEST_CASE("composite momentum residual equals the source terms to second order") {
    const CompositeField& f = preset();
    for (auto [t, xi] : {std::pair{5.0, 3.4}, std::pair{20.0, 1.0}, std::pair{0.5, f.chart().beta + 2.0}}) {
        const CompositeSample s = f.eval(t, xi);
        const double src = f.source(s).total();
        const double e1 = std::abs(momentum_residual(f, t, xi, 2e-2) - src);
        const double e2 = std::abs(momentum_residual(f, t, xi, 1e-2) - src);
        CAPTURE(t);
        CAPTURE(xi);
        CHECK((e2 < 1e-9 || e2 < e1));
        CHECK(e2 < 1e-4 * std::abs(src) + 1e-9);
    }
}

TEST_CASE("mass equation is satisfied by the composite") {
    const CompositeField& f = preset();
    const double sm = f.chart().sigma_minus;
    for (double xi : {0.5, 3.0, f.chart().beta + 1.0}) {
        const double t = 4.0;
        const CompositeSample s = f.eval(t, xi);
        CHECK(std::abs(s.v_t - sm * s.v_x - s.u_x) < 1e-10);
    }
}

TEST_CASE("weight bounds") {
    const CompositeField& f = preset();
    const double ds = f.chart().delta_s;
    for (int i = 0; i <= 4000; ++i) {
        const WeightSample w = f.weight(0.0, 2.0 * f.chart().beta * i / 4000.0);
        CHECK(w.a >= 1.0);
        CHECK(w.a <= 1.0 + std::sqrt(ds));
        CHECK(w.a_x >= 0.0);
    }
}

TEST_CASE("shifting the shock translates its coordinate") {
    CompositeField f = preset();
    const double z0 = f.zeta(3.0, 1500.0);
    f.set_shift(2.5);
    CHECK(f.zeta(3.0, 1502.5) == doctest::Approx(z0).epsilon(1e-15));
    const CompositeSample a = f.eval(3.0, 1502.5);
    f.set_shift(0.0);
    const CompositeSample b = f.eval(3.0, 1500.0);
    CHECK(std::abs(a.shock.v - b.shock.v) < 1e-14);
}

TEST_CASE("y transform is increasing with y0 tiny for large beta") {
    const CompositeField& f = preset();
    std::vector<double> xi;
    for (int i = 0; i <= 200; ++i) xi.push_back(15.0 * i);
    const YTransform y = f.y_transform(0.0, xi);
    for (std::size_t i = 1; i < xi.size(); ++i) CHECK(y.y[i] >= y.y[i - 1]);
    CHECK(y.y0 < 1e-20);
    CHECK(y.y.back() == doctest::Approx(1.0).epsilon(1e-10));
}
