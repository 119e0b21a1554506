#include "wavelab/superpose.hpp"

#include <cmath>

#include "wavelab/errors.hpp"

namespace wavelab {

namespace {

double viscous(double v, double v_x, double u_x, double u_xx) {
    return u_xx / v - u_x * v_x / (v * v);
}

}  // namespace

CompositeField::CompositeField(const WaveChart& chart, const GasParams& g,
                               const ProfileOptions& opt)
    : CompositeField(chart, g, integrate_boundary_layer(chart, g, opt),
                     integrate_shock(chart, g, opt), RarefactionEvaluator(chart, g, opt.newton_tol)) {}

CompositeField::CompositeField(const WaveChart& chart, const GasParams& g, ProfileTable bl,
                               ProfileTable shock, RarefactionEvaluator r)
    : chart_(chart), gas_(g), bl_(std::move(bl)), shock_(std::move(shock)), rare_(std::move(r)) {
    sqrt_ds_ = std::sqrt(chart_.delta_s);
}

double CompositeField::zeta(double t, double xi) const {
    return xi - (chart_.sigma - chart_.sigma_minus) * t - x_ - chart_.beta;
}

CompositeSample CompositeField::eval(double t, double xi, double* warm_w) const {
    CompositeSample s;
    s.bl = bl_.sample(xi);
    s.r = rare_.eval(t, xi, warm_w);
    s.zeta = zeta(t, xi);
    s.shock = shock_.sample(s.zeta);
    const State& us = chart_.u_star;
    const State& um = chart_.u_mid;
    s.v = s.bl.v + s.r.v + s.shock.v - us.v - um.v;
    s.u = s.bl.u + s.r.u + s.shock.u - us.u - um.u;
    s.v_x = s.bl.v_x + s.r.v_x + s.shock.v_x;
    s.u_x = s.bl.u_x + s.r.u_x + s.shock.u_x;
    s.v_xx = s.bl.v_xx + s.r.v_xx + s.shock.v_xx;
    s.u_xx = s.bl.u_xx + s.r.u_xx + s.shock.u_xx;
    const double c = chart_.sigma - chart_.sigma_minus;
    s.v_t = s.r.v_t - c * s.shock.v_x;
    s.u_t = s.r.u_t - c * s.shock.u_x;
    return s;
}

void CompositeField::eval_grid(double t, std::span<const double> xi,
                               std::vector<CompositeSample>& out) const {
    out.resize(xi.size());
    double warm = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) out[i] = eval(t, xi[i], i ? &warm : nullptr);
}

WeightSample CompositeField::weight_of(const ProfileSample& sh) const {
    if (!weight_enabled()) return {};
    return {1.0 + chart_.sigma * sh.dev_left / sqrt_ds_, chart_.sigma * sh.v_x / sqrt_ds_};
}

WeightSample CompositeField::weight(double t, double xi) const {
    return weight_of(shock_.sample(zeta(t, xi)));
}

SourceTerms CompositeField::source(const CompositeSample& s) const {
    const GasParams& g = gas_;
    SourceTerms out;
    out.s_i1 = pressure_derivative(s.v, g) * s.v_x - pressure_derivative(s.bl.v, g) * s.bl.v_x -
               pressure_derivative(s.r.v, g) * s.r.v_x -
               pressure_derivative(s.shock.v, g) * s.shock.v_x;
    const double vbar = viscous(s.v, s.v_x, s.u_x, s.u_xx);
    const double vbl = viscous(s.bl.v, s.bl.v_x, s.bl.u_x, s.bl.u_xx);
    const double vr = viscous(s.r.v, s.r.v_x, s.r.u_x, s.r.u_xx);
    const double vs = viscous(s.shock.v, s.shock.v_x, s.shock.u_x, s.shock.u_xx);
    out.s_i2 = -(vbar - vbl - vr - vs);
    out.s_r = -vr;
    return out;
}

YTransform CompositeField::y_transform(double t, std::span<const double> xi) const {
    if (!chart_.has_shock()) throw PreconditionError("y-transform needs a shock (delta_S > 0)");
    const double jump = chart_.u_mid.u - chart_.u_plus.u;
    YTransform out;
    out.y.resize(xi.size());
    out.y_x.resize(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const ProfileSample sh = shock_.sample(zeta(t, xi[i]));
        out.y[i] = chart_.sigma * sh.dev_left / jump;
        out.y_x[i] = chart_.sigma * sh.v_x / jump;
    }
    out.y0 = chart_.sigma * shock_.sample(zeta(t, 0.0)).dev_left / jump;
    return out;
}

}  // namespace wavelab
