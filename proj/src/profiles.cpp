#include "wavelab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wavelab/errors.hpp"
#include "wavelab/ode.hpp"

namespace wavelab {

std::string_view to_string(ProfileKind k) {
    return k == ProfileKind::BoundaryLayer ? "boundary_layer" : "shock";
}

namespace {

// Quintic Hermite on [0, h] from values, slopes and second derivatives.
double hermite5(double y0, double y1, double m0, double m1, double c0, double c1, double h, double s) {
    const double t = s / h;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double h1 = 10 * t3 - 15 * t4 + 6 * t5;
    const double g0 = t - 6 * t3 + 8 * t4 - 3 * t5;
    const double g1 = -4 * t3 + 7 * t4 - 3 * t5;
    const double k0 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
    const double k1 = 0.5 * (t3 - 2 * t4 + t5);
    return y0 + (y1 - y0) * h1 + h * (m0 * g0 + m1 * g1) + h * h * (c0 * k0 + c1 * k1);
}

constexpr double kUnderflowFloor = 1e-290;

}  // namespace

double ProfileTable::rhs_from_dev(double dev, bool right_dev) const {
    if (trivial) return 0.0;
    const GasParams& g = gas;
    const double w = right_dev ? right_state.v : left_state.v;
    const double d = right_dev ? -dev : dev;  // v - w
    const double v = w + d;
    const double prel = pressure(w, g) * binomial_remainder(-g.gamma, d / w);
    if (kind == ProfileKind::BoundaryLayer) {
        const double lin = speed * speed + pressure_derivative(w, g);
        return v * (prel + lin * d) / speed;
    }
    const double F = (speed * speed + pressure_derivative(w, g)) * d + prel;
    return -(v / speed) * F;
}

double ProfileTable::rhs(double v) const {
    if (trivial) return 0.0;
    if (kind == ProfileKind::BoundaryLayer) return rhs_from_dev(right_state.v - v, true);
    const bool right = std::abs(v - right_state.v) < std::abs(v - left_state.v);
    return right ? rhs_from_dev(right_state.v - v, true) : rhs_from_dev(v - left_state.v, false);
}

double ProfileTable::rhs_derivative(double v) const {
    if (trivial) return 0.0;
    const GasParams& g = gas;
    if (kind == ProfileKind::BoundaryLayer) {
        const double lin = speed * speed + pressure_derivative(v_anchor, g);
        const double bracket = relative_pressure(v, v_anchor, g) + lin * (v - v_anchor);
        return (bracket + v * (speed * speed + pressure_derivative(v, g))) / speed;
    }
    const double F = -speed * rhs(v) / v;
    return -(F + v * (speed * speed + pressure_derivative(v, g))) / speed;
}

double ProfileTable::velocity_of(double v) const {
    if (trivial) return left_state.u;
    if (kind == ProfileKind::BoundaryLayer) return u_anchor + speed * (v - v_anchor);
    return u_anchor - speed * (v - v_anchor);
}

double ProfileTable::interpolate_dev(std::size_t i, double s, bool right_dev) const {
    const double h = xi[i + 1] - xi[i];
    const double sign = right_dev ? -1.0 : 1.0;
    const auto& d = right_dev ? dev_right : dev_left;
    const double c0 = rhs_derivative(v[i]) * v_xi[i];
    const double c1 = rhs_derivative(v[i + 1]) * v_xi[i + 1];
    return hermite5(d[i], d[i + 1], sign * v_xi[i], sign * v_xi[i + 1], sign * c0, sign * c1, h, s - xi[i]);
}

ProfileSample ProfileTable::sample(double s) const {
    ProfileSample out;
    if (trivial) {
        out.v = left_state.v;
        out.u = left_state.u;
        return out;
    }
    const double span_lr = right_state.v - left_state.v;
    double dl = 0.0;
    double dr = 0.0;
    const bool bl = kind == ProfileKind::BoundaryLayer;
    if (bl) {
        s = std::max(s, 0.0);
        if (s >= xi.back()) {
            dr = right_tail.prefactor / (s + right_tail.offset);
        } else {
            const auto it = std::upper_bound(xi.begin(), xi.end(), s);
            dr = interpolate_dev(static_cast<std::size_t>(it - xi.begin()) - 1, s, true);
        }
        dl = span_lr - dr;
    } else if (s < 0.0) {
        if (s <= xi.front()) {
            dl = left_tail.prefactor * std::exp(-left_tail.rate * (left_tail.offset - s));
        } else {
            const auto it = std::upper_bound(xi.begin(), xi.end(), s);
            dl = interpolate_dev(static_cast<std::size_t>(it - xi.begin()) - 1, s, false);
        }
        dr = span_lr - dl;
    } else {
        if (s >= xi.back()) {
            dr = right_tail.prefactor * std::exp(-right_tail.rate * (s - right_tail.offset));
        } else {
            const auto it = std::upper_bound(xi.begin(), xi.end(), s);
            dr = interpolate_dev(static_cast<std::size_t>(it - xi.begin()) - 1, s, true);
        }
        dl = span_lr - dr;
    }
    const bool use_left = !bl && s < 0.0;
    out.v = use_left ? left_state.v + dl : right_state.v - dr;
    out.dev_left = dl;
    out.dev_right = dr;
    const double slope = bl ? speed : -speed;
    if (bl) {
        out.u = right_state.u - slope * dr;
    } else {
        out.u = use_left ? left_state.u + slope * dl : right_state.u - slope * dr;
    }
    if (bl && s == 0.0) out.u = left_state.u;
    out.v_x = use_left ? rhs_from_dev(dl, false) : rhs_from_dev(dr, true);
    out.v_xx = rhs_derivative(out.v) * out.v_x;
    out.u_x = slope * out.v_x;
    out.u_xx = slope * out.v_xx;
    return out;
}

double ProfileTable::ode_residual(double rtol) const {
    if (trivial || xi.size() < 2) return 0.0;
    OdeOptions opt;
    opt.rtol = rtol;
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < xi.size(); ++i) {
        const double h = xi[i + 1] - xi[i];
        const bool right_dev = kind == ProfileKind::BoundaryLayer || xi[i] >= 0.0;
        double pred;
        if (right_dev) {
            const double e0 = dev_right[i];
            if (!(e0 > 0.0)) continue;
            opt.initial_step = std::min(h, 1e-2 / std::max(1e-300, std::abs(rhs_from_dev(e0, true)) / e0));
            const double pts[2] = {0.0, h};
            auto sol = integrate_autonomous([&](double e) { return -rhs_from_dev(e, true); }, e0, pts, opt);
            if (sol.y.size() < 2) continue;
            pred = sol.y[1];
            worst = std::max(worst, std::abs(pred - dev_right[i + 1]) / h);
        } else {
            // integrate backwards from node i+1 to node i in the left deviation
            const double d0 = dev_left[i + 1];
            if (!(d0 > 0.0)) continue;
            opt.initial_step = std::min(h, 1e-2 / std::max(1e-300, std::abs(rhs_from_dev(d0, false)) / d0));
            const double pts[2] = {0.0, h};
            auto sol = integrate_autonomous([&](double d) { return -rhs_from_dev(d, false); }, d0, pts, opt);
            if (sol.y.size() < 2) continue;
            pred = sol.y[1];
            worst = std::max(worst, std::abs(pred - dev_left[i]) / h);
        }
    }
    return worst;
}

ShockRates shock_endpoint_rates(const WaveChart& c, const GasParams& g) {
    const double s = c.sigma;
    const double vl = c.u_mid.v;
    const double vr = c.u_plus.v;
    return {(vl / s) * (-pressure_derivative(vl, g) - s * s),
            (vr / s) * (s * s + pressure_derivative(vr, g))};
}

ProfileTable integrate_boundary_layer(const WaveChart& c, const GasParams& g,
                                      const ProfileOptions& opt) {
    check_chart(c, g);
    ProfileTable t;
    t.kind = ProfileKind::BoundaryLayer;
    t.gas = g;
    t.tol = opt.tol;
    t.left_state = c.u_minus;
    t.right_state = c.u_star;
    t.speed = -c.sigma_minus;
    t.v_anchor = c.u_star.v;
    t.u_anchor = c.u_star.u;
    if (!c.has_boundary_layer()) {
        t.trivial = true;
        t.xi = {0.0};
        t.v = {c.u_star.v};
        t.u = {c.u_star.u};
        t.v_xi = t.u_xi = {0.0};
        t.dev_left = t.dev_right = {0.0};
        return t;
    }
    const double vs = c.u_star.v;
    const double d0 = vs - c.u_minus.v;
    const double k = vs * pressure_second_derivative(vs, g) / (2.0 * t.speed);
    const double b = 1.0 / (k * d0);
    const double d_cut = 1e-3 * c.delta_bl;
    const double end = opt.xi_max > 0.0 ? opt.xi_max : 20.0 / (k * d_cut);

    std::vector<double> nodes{0.0};
    while (nodes.back() < end) nodes.push_back(nodes.back() + 0.02 * (nodes.back() + b));
    if (opt.xi_max > 0.0) nodes.back() = opt.xi_max;

    bool cut = false;
    OdeOptions o;
    o.rtol = opt.tol;
    o.initial_step = 1e-3 * b;
    auto keep = [&](double d) {
        if (opt.xi_max <= 0.0 && d < d_cut) {
            cut = true;
            return false;
        }
        return d > kUnderflowFloor;
    };
    auto sol = integrate_autonomous([&](double d) { return -t.rhs_from_dev(d, true); }, d0, nodes, o, keep);
    t.truncated = sol.truncated && !cut;
    t.xi = sol.x;
    t.dev_right = sol.y;
    t.xi_reliable = t.xi.back();
    const std::size_t n = t.xi.size();
    t.v.resize(n);
    t.u.resize(n);
    t.v_xi.resize(n);
    t.u_xi.resize(n);
    t.dev_left.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.v[i] = vs - t.dev_right[i];
        t.u[i] = c.u_star.u - t.speed * t.dev_right[i];
        t.v_xi[i] = t.rhs_from_dev(t.dev_right[i], true);
        t.u_xi[i] = t.speed * t.v_xi[i];
        t.dev_left[i] = d0 - t.dev_right[i];
    }
    t.v[0] = c.u_minus.v;
    t.u[0] = c.u_minus.u;
    const double dc = t.dev_right.back();
    const double slope = t.v_xi.back();
    t.right_tail.prefactor = dc * dc / slope;
    t.right_tail.offset = dc / slope - t.xi.back();
    t.right_tail.rate = 1.0;
    return t;
}

ProfileTable integrate_shock(const WaveChart& c, const GasParams& g, const ProfileOptions& opt) {
    check_chart(c, g);
    ProfileTable t;
    t.kind = ProfileKind::Shock;
    t.gas = g;
    t.tol = opt.tol;
    t.left_state = c.u_mid;
    t.right_state = c.u_plus;
    t.speed = c.sigma;
    t.v_anchor = c.u_mid.v;
    t.u_anchor = c.u_mid.u;
    if (!c.has_shock()) {
        t.trivial = true;
        t.xi = {0.0};
        t.v = {c.u_mid.v};
        t.u = {c.u_mid.u};
        t.v_xi = t.u_xi = {0.0};
        t.dev_left = t.dev_right = {0.0};
        return t;
    }
    const ShockRates rates = shock_endpoint_rates(c, g);
    const double kmin = std::min(rates.left, rates.right);
    const double kmax = std::max(rates.left, rates.right);
    const double zmax = opt.zeta_max > 0.0
                            ? opt.zeta_max
                            : std::max(50.0 / kmin, std::min(10.0 * c.beta, 600.0 / kmin));
    const double h = 0.02 / kmax;
    const std::size_t m = static_cast<std::size_t>(std::ceil(zmax / h));
    std::vector<double> nodes(m + 1);
    for (std::size_t i = 0; i <= m; ++i) nodes[i] = static_cast<double>(i) * h;

    const double vl = c.u_mid.v;
    const double vr = c.u_plus.v;
    const double half = 0.5 * (vr - vl);
    OdeOptions o;
    o.rtol = opt.tol;
    o.initial_step = 1e-2 * h;
    o.max_step = 4.0 * h;
    auto keep = [](double d) { return d > kUnderflowFloor; };
    auto left = integrate_autonomous([&](double d) { return -t.rhs_from_dev(d, false); }, half, nodes, o, keep);
    auto right =
        integrate_autonomous([&](double e) { return -t.rhs_from_dev(e, true); }, half, nodes, o, keep);
    // underflow of the deviation is a natural end, not a failure
    auto failed = [](const OdeSolution& s) { return s.truncated && s.y.back() > 1e-250; };
    t.truncated = failed(left) || failed(right);

    const std::size_t nl = left.x.size();
    const std::size_t nr = right.x.size();
    const std::size_t n = nl + nr - 1;
    t.xi.resize(n);
    t.dev_left.resize(n);
    t.dev_right.resize(n);
    for (std::size_t i = 0; i < nl; ++i) {
        const std::size_t j = nl - 1 - i;
        t.xi[j] = -left.x[i];
        t.dev_left[j] = left.y[i];
        t.dev_right[j] = (vr - vl) - left.y[i];
    }
    for (std::size_t i = 1; i < nr; ++i) {
        const std::size_t j = nl - 1 + i;
        t.xi[j] = right.x[i];
        t.dev_right[j] = right.y[i];
        t.dev_left[j] = (vr - vl) - right.y[i];
    }
    t.xi[nl - 1] = 0.0;
    t.v.resize(n);
    t.u.resize(n);
    t.v_xi.resize(n);
    t.u_xi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (t.xi[i] < 0.0) {
            t.v[i] = vl + t.dev_left[i];
            t.u[i] = c.u_mid.u - c.sigma * t.dev_left[i];
        } else {
            t.v[i] = vr - t.dev_right[i];
            t.u[i] = c.u_plus.u + c.sigma * t.dev_right[i];
        }
        t.v_xi[i] = t.xi[i] < 0.0 ? t.rhs_from_dev(t.dev_left[i], false)
                                  : t.rhs_from_dev(t.dev_right[i], true);
        t.u_xi[i] = -c.sigma * t.v_xi[i];
    }
    t.v[nl - 1] = vl + half;
    t.u[nl - 1] = c.u_mid.u - c.sigma * half;
    t.xi_reliable = std::min(-t.xi.front(), t.xi.back());

    const double dl = t.dev_left.front();
    t.left_tail = {t.v_xi.front() / dl, dl, t.xi.front()};
    const double dr = t.dev_right.back();
    t.right_tail = {t.v_xi.back() / dr, dr, t.xi.back()};
    return t;
}

BurgersPoint burgers_eval(double t, double x, double w_minus, double w_plus, double tol,
                          const double* guess) {
    if (w_minus > w_plus) throw PreconditionError("burgers_eval requires w- <= w+");
    if (t < 0.0) throw PreconditionError("burgers_eval requires t >= 0");
    BurgersPoint r;
    const double half = 0.5 * (w_plus - w_minus);
    const double mid = 0.5 * (w_plus + w_minus);
    if (half == 0.0) {
        r.w = mid;
        r.foot = x - t * mid;
        return r;
    }
    auto w0 = [&](double y) {
        if (std::abs(y) < 1.0) return mid + half * std::tanh(y);
        const double e = std::exp(-2.0 * std::abs(y));
        const double off = 2.0 * half * e / (1.0 + e);
        return y > 0.0 ? w_plus - off : w_minus + off;
    };
    auto sech2 = [](double y) {
        const double e = std::exp(-2.0 * std::abs(y));
        return 4.0 * e / ((1.0 + e) * (1.0 + e));
    };
    double y;
    if (t == 0.0) {
        y = x;
    } else {
        double lo = x - t * w_plus;
        double hi = x - t * w_minus;
        const double wg = guess ? *guess : w0(x / std::max(t, 1.0));
        y = std::clamp(x - t * wg, lo, hi);
        for (int it = 0; it < 200; ++it) {
            const double G = y + t * w0(y) - x;
            ++r.iterations;
            if (G == 0.0) break;
            (G < 0.0 ? lo : hi) = y;
            const double dG = 1.0 + t * half * sech2(y);
            double next = y - G / dG;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            const double step = std::abs(next - y);
            y = next;
            if (step <= tol * (1.0 + std::abs(y)) || hi - lo <= tol * (1.0 + std::abs(y))) break;
        }
    }
    r.foot = y;
    r.w = w0(y);
    const double s2 = sech2(y);
    const double d1 = half * s2;
    const double d2 = -2.0 * half * s2 * std::tanh(y);
    const double jac = 1.0 + t * d1;
    r.w_x = d1 / jac;
    r.w_xx = d2 / (jac * jac * jac);
    r.residual = std::abs(r.w - w0(x - r.w * t));
    return r;
}

RarefactionEvaluator::RarefactionEvaluator(const WaveChart& c, const GasParams& g,
                                           double tol)
    : sigma_minus(c.sigma_minus), u_star(c.u_star), newton_tol(tol), gas(g) {
    trivial = !c.has_rarefaction();
    const double ls = lambda1(c.u_star.v, g);
    const double lm = lambda1(c.u_mid.v, g);
    w_minus = 2.0 * ls - lm;
    w_plus = lm;
    if (!trivial && !(w_minus < w_plus)) {
        throw PreconditionError("rarefaction data must be increasing (w- < w+)");
    }
}

RarefactionSample RarefactionEvaluator::eval(double t, double xi, double* warm_w) const {
    RarefactionSample s;
    if (trivial) {
        s.v = u_star.v;
        s.u = u_star.u;
        s.w = lambda1(u_star.v, gas);
        return s;
    }
    const BurgersPoint b =
        burgers_eval(t, xi + sigma_minus * t, w_minus, w_plus, newton_tol, warm_w);
    if (warm_w) *warm_w = b.w;
    const GasParams& g = gas;
    s.w = b.w;
    s.v = lambda1_inverse(b.w, g);
    s.u = u_star.u - (lambda1_antiderivative(s.v, g) - lambda1_antiderivative(u_star.v, g));
    const double l = lambda1(s.v, g);
    const double l1 = lambda1_derivative(s.v, g);
    const double l2 = lambda1_second_derivative(s.v, g);
    s.v_x = b.w_x / l1;
    s.v_xx = (b.w_xx - l2 * s.v_x * s.v_x) / l1;
    s.u_x = -l * s.v_x;
    s.u_xx = -l1 * s.v_x * s.v_x - l * s.v_xx;
    const double w_t = (sigma_minus - b.w) * b.w_x;
    s.v_t = w_t / l1;
    s.u_t = -l * s.v_t;
    return s;
}

}  // namespace wavelab
