#include <cmath>
#include <numeric>

#include "../common/manufactured.hpp"
#include "doctest.h"
#include "wavelab/errors.hpp"
#include "wavelab/solver.hpp"
#include "wavelab/superpose.hpp"

using namespace wavelab;

namespace {
const GasParams kGas{5.0 / 3.0};
}

TEST_CASE("constant state is preserved") {
    const State c{1.2, 0.7};
    const Grid grid{50.0, 200};
    const InflowSolver solver(grid, kGas, -c.u / c.v, constant_boundary(c), constant_boundary(c));
    SolverState s;
    s.v.assign(grid.size(), c.v);
    s.u.assign(grid.size(), c.u);
    for (int k = 0; k < 200; ++k) solver.step(s, solver.stable_dt(s.v));
    for (int i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(s.v[i] - c.v) < 1e-14);
        CHECK(std::abs(s.u[i] - c.u) < 1e-14);
    }
    CHECK(s.steps == 200);
}

TEST_CASE("manufactured solution converges at second order in space") {
    const testing::Manufactured m;
    const double L = 2.0 * std::numbers::pi;
    double prev = 0.0;
    for (int n : {25, 50, 100}) {
        const double dx = L / n;
        const double e = m.max_error(m.run(L, n, 0.05 * dx * dx, 0.3), L);
        if (prev > 0.0) CHECK(std::log2(prev / e) == doctest::Approx(2.0).epsilon(0.05));
        prev = e;
    }
}

TEST_CASE("pure advection of u with pressure and viscosity off") {
    auto profile = [](double x) { return 1.0 + 0.1 * std::exp(-(x - 20.0) * (x - 20.0) / 4.0); };
    SolverOptions opt;
    opt.with_pressure = false;
    opt.with_viscosity = false;
    // u_t = sigma_- u_xi with sigma_- = -1: the profile moves right at unit speed
    auto error = [&](int cells) {
        const Grid grid{40.0, cells};
        const InflowSolver solver(grid, kGas, -1.0, constant_boundary({1.0, 1.0}), constant_boundary({1.0, 1.0}),
                                  opt);
        SolverState s;
        for (int i = 0; i < grid.size(); ++i) {
            s.v.push_back(1.0);
            s.u.push_back(profile(grid.node(i)));
        }
        const double t_end = 5.0;
        const int steps = 4 * cells;
        for (int k = 0; k < steps; ++k) solver.step(s, t_end / steps);
        double err = 0.0;
        for (int i = 0; i < grid.size(); ++i) err = std::max(err, std::abs(s.u[i] - profile(grid.node(i) - t_end)));
        return err;
    };
    const double e1 = error(400), e2 = error(800);
    CHECK(e1 < 1e-3);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("discrete mass balance over interior nodes") {
    // interior sum of v changes by the telescoped centred flux of sigma_- v + u
    const WaveChart c = build_chart({1.0, 1.0}, 1.3, 1.35, std::nullopt, kGas);
    const CompositeField f(c, kGas);
    const Grid grid{1700.0, 2000};
    const InflowSolver solver(grid, kGas, c.sigma_minus, constant_boundary(c.u_minus),
                              composite_boundary(f, grid.length));
    SolverState s = initial_data(f, {0.01, 0.125, 0.25, "both"}, grid);
    const int n = grid.cells;
    auto mass = [&](const SolverState& st) {
        double m = 0.0;
        for (int i = 1; i < n; ++i) m += grid.dx() * st.v[i];
        return m;
    };
    auto flux = [&](const SolverState& st) {
        auto q = [&](int i) { return c.sigma_minus * st.v[i] + st.u[i]; };
        return 0.5 * (q(n) + q(n - 1)) - 0.5 * (q(1) + q(0));
    };
    // fixed steps dt and dt/2: the balance defect is the time-quadrature error of the flux
    auto defect = [&](double dt, int steps) {
        SolverState st = s;
        const double m0 = mass(st);
        double inflow = 0.0;
        for (int k = 0; k < steps; ++k) {
            const double f0 = flux(st);
            solver.step(st, dt);
            inflow += 0.5 * dt * (f0 + flux(st));
        }
        return std::abs(mass(st) - m0 - inflow);
    };
    const double dt = 0.5 * solver.stable_dt(s.v);
    const double e1 = defect(dt, 20), e2 = defect(0.5 * dt, 40);
    CHECK(e2 < 0.3 * e1);
    CHECK(e2 < 1e-6 * mass(s));
}

TEST_CASE("effective velocity is exact for exponential volume") {
    const double dx = 0.1;
    SolverState s;
    for (int i = 0; i < 50; ++i) {
        s.v.push_back(std::exp(0.3 * i * dx));
        s.u.push_back(2.0);
    }
    for (double h : effective_velocity(s, dx)) CHECK(h == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("positivity loss aborts and tiny steps are refused") {
    const Grid grid{10.0, 20};
    const InflowSolver solver(grid, kGas, -1.0, constant_boundary({1.0, 1.0}), constant_boundary({1.0, 1.0}));
    SolverState s;
    s.v.assign(grid.size(), 1.0);
    s.u.assign(grid.size(), 1.0);
    CHECK_THROWS_AS(solver.step(s, 0.0), SolverAbort);
    s.u[10] = 1e3;
    CHECK_THROWS_AS(solver.step(s, 1.0), SolverAbort);
}

TEST_CASE("initial data has the requested H1 size and keeps the boundary") {
    const WaveChart c = build_chart({1.0, 1.0}, 1.3, 1.35, std::nullopt, kGas);
    const CompositeField f(c, kGas);
    const Grid grid{1700.0, 1000};
    const SolverState s = initial_data(f, {0.02, 0.125, 0.25, "two_wave"}, grid);
    std::vector<CompositeSample> bar;
    f.eval_grid(0.0, grid.nodes(), bar);
    std::vector<double> pv, pu;
    for (int i = 0; i < grid.size(); ++i) {
        pv.push_back(s.v[i] - bar[i].v);
        pu.push_back(s.u[i] - bar[i].u);
    }
    CHECK(discrete_h1_norm(pv, pu, grid.dx()) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(pv.front() == 0.0);
    CHECK(pv.back() == 0.0);
    CHECK_THROWS_AS(initial_data(f, {0.01, 0.3, 0.2, "both"}, grid), PreconditionError);
    CHECK_THROWS_AS(initial_data(f, {0.01, 0.1, 0.2, "diagonal"}, grid), PreconditionError);
}
