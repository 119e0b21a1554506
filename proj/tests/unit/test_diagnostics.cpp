#include <cmath>

#include "doctest.h"
#include "wavelab/diagnostics.hpp"
#include "wavelab/errors.hpp"

using namespace wavelab;

namespace {

const GasParams kGas{5.0 / 3.0};

const CompositeField& preset() {
    static const CompositeField f(build_chart({1.0, 1.0}, 1.3, 1.35, std::nullopt, kGas), kGas);
    return f;
}

struct Snapshot {
    SolverState s;
    std::vector<CompositeSample> bar;
    double dx;
};

Snapshot perturbed(double scale) {
    const CompositeField& f = preset();
    const Grid grid{1700.0, 2000};
    Snapshot out{initial_data(f, {0.01 * scale, 0.8, 0.95, "both"}, grid), {}, grid.dx()};
    f.eval_grid(0.0, grid.nodes(), out.bar);
    return out;
}

}  // namespace

TEST_CASE("zero perturbation gives vanishing functionals") {
    const Snapshot z = perturbed(0.0);
    const DiagnosticsFrame fr = compute_frame(z.s, z.bar, preset(), 0.0, z.dx, {false, true, 1e-10});
    for (double x : {fr.rel_entropy, fr.weighted_rel_entropy, fr.g_s, fr.g_1, fr.g_2, fr.g_v, fr.d_v1, fr.d_u1,
                     fr.d_u2, fr.h1_sq, fr.sup_perturbation, fr.poincare_lhs}) {
        CHECK(x == 0.0);
    }
}

TEST_CASE("quadratic functionals scale with the square of the perturbation") {
    const Snapshot a = perturbed(1.0), b = perturbed(2.0);
    const FrameOptions opt{false, false, 1e-10};
    const DiagnosticsFrame fa = compute_frame(a.s, a.bar, preset(), 0.0, a.dx, opt);
    const DiagnosticsFrame fb = compute_frame(b.s, b.bar, preset(), 0.0, b.dx, opt);
    REQUIRE(fa.g_s > 0.0);
    CHECK(fb.g_s == doctest::Approx(4.0 * fa.g_s).epsilon(1e-10));
    CHECK(fb.g_2 == doctest::Approx(4.0 * fa.g_2).epsilon(1e-10));
    CHECK(fb.d_u1_plain == doctest::Approx(4.0 * fa.d_u1_plain).epsilon(1e-10));
    CHECK(fb.sup_perturbation == doctest::Approx(2.0 * fa.sup_perturbation).epsilon(1e-10));
    CHECK(fb.rel_entropy == doctest::Approx(4.0 * fa.rel_entropy).epsilon(1e-2));
}

TEST_CASE("frame columns and values line up") {
    const Snapshot a = perturbed(1.0);
    const DiagnosticsFrame fr = compute_frame(a.s, a.bar, preset(), 0.0, a.dx, {false, true, 1e-10});
    CHECK(DiagnosticsFrame::column_names().size() == fr.values().size());
    CHECK(DiagnosticsFrame::column_names().front() == "t");
}

TEST_CASE("Poincare inequality on the shock layer of a perturbed state") {
    const Snapshot a = perturbed(1.0);
    std::vector<double> u = a.s.u;
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += 1e-3 * std::cos(0.05 * i);
    const PoincareResult r = poincare_on_solution(u, a.bar, preset(), a.dx);
    CHECK(r.lhs > 0.0);
    CHECK(r.lhs <= r.rhs);
}

TEST_CASE("Poincare equality case and preconditions") {
    const PoincareResult r = poincare_check([](double y) { return y; }, [](double) { return 1.0; }, 0.0, 1.0);
    CHECK(r.lhs == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    const std::vector<double> few(10, 1.0);
    CHECK_THROWS_AS(poincare_check(few, 0.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(poincare_check([](double) { return 0.0; }, [](double) { return 0.0; }, 1.0, 1.0),
                    PreconditionError);
}

TEST_CASE("interactions are non-negative and vanish without a rarefaction") {
    const Interactions in = wave_interactions(10.0, preset());
    CHECK(in.i1 > 0.0);
    CHECK(in.i2 > 0.0);
    CHECK(in.i3 >= 0.0);
    CHECK(in.l2 > 0.0);
    const CompositeField flat(build_chart({1.0, 1.0}, transonic_point({1.0, 1.0}, kGas).v, 1.35, std::nullopt, kGas),
                              kGas);
    const Interactions z = wave_interactions(10.0, flat);
    CHECK(z.i1 == 0.0);
    CHECK(z.i3 == 0.0);
    CHECK(z.i2 > 0.0);
}

TEST_CASE("boundary terms at t = 0") {
    const Snapshot a = perturbed(1.0);
    const auto j = boundary_terms(a.s, a.bar, preset(), a.dx);
    CHECK(j[3] == 0.0);
    for (double x : j) CHECK(std::isfinite(x));
}
