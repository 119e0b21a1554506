#include <cmath>

#include "doctest.h"
#include "wavelab/errors.hpp"
#include "wavelab/shift.hpp"

using namespace wavelab;

namespace {

const GasParams kGas{5.0 / 3.0};

// No boundary layer: U- sits at the transonic point, so near the shock the
// composite volume is the shock profile itself.
const CompositeField& no_layer() {
    static const CompositeField f(build_chart({1.0, std::sqrt(5.0 / 3.0)}, 1.3, 1.35, std::nullopt, kGas), kGas);
    return f;
}

struct Sampled {
    Grid grid;
    std::vector<CompositeSample> bar;
    std::vector<double> u;
};

Sampled sample(const CompositeField& f, double length, int cells) {
    Sampled s{{length, cells}, {}, {}};
    f.eval_grid(0.0, s.grid.nodes(), s.bar);
    for (const CompositeSample& b : s.bar) s.u.push_back(b.u);
    return s;
}

}  // namespace

TEST_CASE("shift speed vanishes on the composite and is linear in the perturbation") {
    const CompositeField& f = no_layer();
    const ShiftParams p = make_shift_params(f.chart(), kGas);
    Sampled s = sample(f, 2.0 * f.chart().beta, 40000);
    const double dx = s.grid.dx();
    CHECK(xdot(s.u, s.bar, f, p, dx) == 0.0);

    std::vector<double> u1 = s.u, u2 = s.u;
    for (int i = 0; i < s.grid.size(); ++i) {
        const double phi = std::sin(0.01 * i) * std::exp(-std::pow((s.grid.node(i) - f.chart().beta) / 40.0, 2));
        u1[i] += 1e-3 * phi;
        u2[i] += 3e-3 * phi;
    }
    const double x1 = xdot(u1, s.bar, f, p, dx);
    CHECK(x1 != 0.0);
    CHECK(xdot(u2, s.bar, f, p, dx) == doctest::Approx(3.0 * x1).epsilon(1e-9));
}

TEST_CASE("constant perturbation against closed-form profile integrals") {
    const CompositeField& f = no_layer();
    const WaveChart& c = f.chart();
    const ShiftParams p = make_shift_params(c, kGas);
    Sampled s = sample(f, 2.0 * c.beta, 60000);
    const double eps = 1e-3;
    for (double& x : s.u) x += eps;
    const double got = xdot(s.u, s.bar, f, p, s.grid.dx());

    // a = 1 + sigma (v - v^*)/sqrt(delta_S) and u_x = -sigma v_x along the profile
    const double g = kGas.gamma, vs = c.u_mid.v, vp = c.u_plus.v, k = c.sigma / std::sqrt(c.delta_s);
    const double int_a_ux = -c.sigma * ((vp - vs) + 0.5 * k * (vp - vs) * (vp - vs));
    auto P = [&](double v) { return std::pow(v, -g); };
    auto intP = [&](double v) { return std::pow(v, 1.0 - g) / (1.0 - g); };
    const double int_a_dp = (P(vp) - P(vs)) + k * ((vp - vs) * P(vp) - (intP(vp) - intP(vs)));
    const double expected = -(p.M / p.delta_s) * eps * (int_a_ux + int_a_dp / c.sigma);
    CHECK(got == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("shift integrator records and detects blow-up") {
    ShiftIntegrator it(1.0);
    double x = it.advance(0.0, 0.0, 0.5, 0.1);
    CHECK(x == doctest::Approx(0.05));
    x = it.advance(0.1, x, -0.25, 0.2);
    CHECK(x == doctest::Approx(0.0));
    REQUIRE(it.history().size() == 2);
    CHECK(it.history()[1].t == 0.1);
    CHECK(it.history()[1].xdot == -0.25);
    CHECK_THROWS_AS(it.advance(0.3, x, 2.0, 0.1), SolverAbort);
    CHECK_THROWS_AS(it.advance(0.3, x, std::nan(""), 0.1), SolverAbort);
}

TEST_CASE("no shock, no shift") {
    const CompositeField f(build_chart({1.0, 1.0}, 1.3, 1.3, std::nullopt, kGas), kGas);
    Sampled s = sample(f, 300.0, 300);
    for (double& x : s.u) x += 0.1;
    CHECK(xdot(s.u, s.bar, f, make_shift_params(f.chart(), kGas), s.grid.dx()) == 0.0);
}
