#include "wavelab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/chebyshev.hpp>

#include "wavelab/errors.hpp"

namespace wavelab {

namespace gk = boost::math::quadrature;

const std::vector<std::string>& DiagnosticsFrame::column_names() {
    static const std::vector<std::string> names = {
        "t",          "weighted_rel_entropy", "rel_entropy",   "G_S",         "G_1",
        "G_2",        "G_BL",                 "G_R",           "G_v",         "D_v1",
        "D_u1",       "D_u2",                 "Xdot_sq",       "interaction1", "interaction2",
        "interaction3", "interaction_L2",     "J1",            "J2",          "J3",
        "J4",         "J5",                   "sup_perturbation", "g_val",    "X",
        "Xdot",       "H1_sq",                "D_v",           "D_u1_plain",  "D_u2_plain",
        "D_u2_boundary", "poincare_lhs",      "poincare_rhs"};
    return names;
}

std::vector<double> DiagnosticsFrame::values() const {
    return {t,          weighted_rel_entropy, rel_entropy,  g_s,          g_1,
            g_2,        g_bl,                 g_r,          g_v,          d_v1,
            d_u1,       d_u2,                 xdot_sq,      interaction1, interaction2,
            interaction3, interaction_l2,     j_bd[0],      j_bd[1],      j_bd[2],
            j_bd[3],    j_bd[4],              sup_perturbation, g_val,    shift,
            xdot,       h1_sq,                d_v,          d_u1_plain,   d_u2_plain,
            d_u2_boundary, poincare_lhs,      poincare_rhs};
}

std::array<double, 3> interaction_densities(const CompositeField& f, const CompositeSample& s) {
    const WaveChart& c = f.chart();
    const double vs_lo = c.u_star.v;
    const double vs_hi = c.u_mid.v;
    const double r1 = s.bl.v_x * (s.r.v - vs_lo) + s.r.v_x * (vs_lo - s.bl.v);
    const double r2 = s.bl.v_x * (s.shock.v - vs_hi) + s.shock.v_x * (vs_lo - s.bl.v);
    const double r3 = s.r.v_x * (s.shock.v - vs_hi) + s.shock.v_x * (vs_hi - s.r.v);
    return {r1, r2, r3};
}

namespace {

// Quadrature breakpoints on [0, inf): boundary, fan head, shock core.
std::vector<double> interaction_breaks(double t, const CompositeField& f) {
    const WaveChart& c = f.chart();
    const GasParams& g = f.gas();
    std::vector<double> pts = {0.0, 2.0};
    const double head = (lambda1(c.u_mid.v, g) - c.sigma_minus) * t;
    if (head > 2.0) {
        pts.push_back(head);
        pts.push_back(head + 20.0);
    }
    if (c.has_shock()) {
        const ShockRates k = shock_endpoint_rates(c, g);
        const double width = 60.0 / std::min(k.left, k.right);
        const double centre = (c.sigma - c.sigma_minus) * t + f.shift() + c.beta;
        for (double z : {centre - width, centre - 0.1 * width, centre, centre + 0.1 * width,
                         centre + width}) {
            if (z > 0.0) pts.push_back(z);
        }
    }
    // dyadic points resolve the algebraic boundary-layer tail
    const double last = *std::max_element(pts.begin(), pts.end());
    for (double z = 0.5; z < last; z *= 2.0) pts.push_back(z);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

template <class F>
double integrate_half_line(const F& fn, const std::vector<double>& pts, double tol) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total += gk::gauss_kronrod<double, 31>::integrate(fn, pts[i], pts[i + 1], 15, tol);
    }
    total += gk::gauss_kronrod<double, 31>::integrate(
        fn, pts.back(), std::numeric_limits<double>::infinity(), 15, tol);
    return total;
}

}  // namespace

Interactions wave_interactions(double t, const CompositeField& f, double tol) {
    const std::vector<double> pts = interaction_breaks(t, f);
    Interactions out;
    std::array<double, 4> acc{};
    for (int k = 0; k < 4; ++k) {
        auto fn = [&](double xi) {
            const std::array<double, 3> r = interaction_densities(f, f.eval(t, xi));
            if (k < 3) return r[k];
            const double s = r[0] + r[1] + r[2];
            return s * s;
        };
        acc[k] = integrate_half_line(fn, pts, tol);
    }
    out.i1 = acc[0];
    out.i2 = acc[1];
    out.i3 = acc[2];
    out.l2 = acc[3];
    return out;
}

PoincareResult poincare_check(const std::function<double(double)>& f,
                              const std::function<double(double)>& df, double c, double d,
                              double tol) {
    if (!(d > c) || !std::isfinite(c) || !std::isfinite(d)) {
        throw PreconditionError("Poincare check needs a non-degenerate interval c < d");
    }
    using Q = gk::gauss_kronrod<double, 61>;
    const double mean = Q::integrate(f, c, d, 8, tol) / (d - c);
    PoincareResult r;
    r.lhs = Q::integrate([&](double y) { const double e = f(y) - mean; return e * e; }, c, d, 8,
                         tol);
    r.rhs = 0.5 * Q::integrate(
                      [&](double y) { const double g = df(y); return (y - c) * (d - y) * g * g; },
                      c, d, 8, tol);
    return r;
}

std::vector<double> chebyshev_lobatto_nodes(int n, double c, double d) {
    if (n < 2) throw PreconditionError("need at least two Chebyshev nodes");
    std::vector<double> y(n);
    for (int j = 0; j < n; ++j) {
        // increasing order: x_j = -cos(pi j / (n-1))
        const double x = -std::cos(std::numbers::pi * j / (n - 1));
        y[j] = 0.5 * (c + d) + 0.5 * (d - c) * x;
    }
    y.front() = c;
    y.back() = d;
    return y;
}

PoincareResult poincare_check(std::span<const double> samples, double c, double d) {
    if (!(d > c) || !std::isfinite(c) || !std::isfinite(d)) {
        throw PreconditionError("Poincare check needs a non-degenerate interval c < d");
    }
    const std::size_t n = samples.size();
    if (n < 64) throw PreconditionError("Poincare check needs at least 64 samples");
    const std::size_t m = n - 1;
    // samples are ordered by increasing y, i.e. x_j = cos(pi (m - j) / m)
    std::vector<double> coef(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double wj = (j == 0 || j == m) ? 0.5 : 1.0;
            const std::size_t jj = m - j;
            s += wj * samples[j] * std::cos(std::numbers::pi * double(k * jj % (2 * m)) / m);
        }
        coef[k] = 2.0 * s / m;
    }
    coef[m] *= 0.5;
    // derivative series: c'_{k-1} = c'_{k+1} + 2 k c_k
    std::vector<double> dcoef(n, 0.0);
    for (std::size_t k = m; k >= 1; --k) {
        const double next = (k + 1 < n) ? dcoef[k + 1] : 0.0;
        dcoef[k - 1] = next + 2.0 * k * coef[k];
    }
    const double scale = 2.0 / (d - c);
    auto to_x = [&](double y) { return (2.0 * y - c - d) / (d - c); };
    auto fy = [&](double y) {
        return boost::math::chebyshev_clenshaw_recurrence(coef.data(), coef.size(), to_x(y));
    };
    auto dfy = [&](double y) {
        return scale * boost::math::chebyshev_clenshaw_recurrence(dcoef.data(), dcoef.size() - 1,
                                                                  to_x(y));
    };
    return poincare_check(fy, dfy, c, d);
}

PoincareResult poincare_on_solution(std::span<const double> u,
                                    std::span<const CompositeSample> bar,
                                    const CompositeField& f, double dx) {
    if (!f.chart().has_shock()) throw PreconditionError("Poincare on solution needs a shock");
    const std::size_t n = u.size();
    const double jump = f.chart().u_mid.u - f.chart().u_plus.u;
    const double sigma = f.chart().sigma;
    const double left0 = bar[0].shock.dev_left;
    const double rightL = bar[n - 1].shock.dev_right;
    std::vector<double> g(n), gx(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = u[i] - bar[i].u;
    for (std::size_t i = 1; i + 1 < n; ++i) gx[i] = (g[i + 1] - g[i - 1]) / (2.0 * dx);
    gx[0] = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * dx);
    gx[n - 1] = (3.0 * g[n - 1] - 4.0 * g[n - 2] + g[n - 3]) / (2.0 * dx);

    double mass = 0.0, first = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        const double yx = sigma * bar[i].shock.v_x / jump;
        mass += w * yx;
        first += w * yx * g[i];
    }
    if (!(mass > 0.0)) return {};
    const double mean = first / mass;
    PoincareResult r;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        const ProfileSample& s = bar[i].shock;
        const double yx = sigma * s.v_x / jump;
        const double e = g[i] - mean;
        r.lhs += w * e * e * yx;
        if (s.v_x > 0.0) {
            const double lo = sigma * (s.dev_left - left0) / jump;
            const double hi = sigma * (s.dev_right - rightL) / jump;
            r.rhs += w * lo * (hi / yx) * gx[i] * gx[i];
        }
    }
    r.lhs *= dx;
    r.rhs *= 0.5 * dx;
    return r;
}

std::array<double, 5> boundary_terms(const SolverState& s, std::span<const CompositeSample> bar,
                                     const CompositeField& f, double dx) {
    const GasParams& g = f.gas();
    const CompositeSample& b = bar[0];
    const double a = f.weight_of(b.shock).a;
    const double du = s.u[0] - b.u;
    const double dp = pressure_difference(s.v[0], b.v, g);
    const double dv = s.v[0] - b.v;
    const double du_x =
        (-3.0 * (s.u[0] - bar[0].u) + 4.0 * (s.u[1] - bar[1].u) - (s.u[2] - bar[2].u)) / (2.0 * dx);
    const double sm = f.chart().sigma_minus;
    std::array<double, 5> j{};
    j[0] = a * du * dp;
    j[1] = -sm * a * du * du / 2.0;
    j[2] = -sm * a * relative_internal_energy(s.v[0], b.v, g);
    j[3] = -(a / s.v[0]) * du * du_x;
    j[4] = a / (s.v[0] * b.v) * du * dv * b.u_x;
    return j;
}

DiagnosticsFrame compute_frame(const SolverState& s, std::span<const CompositeSample> bar,
                               const CompositeField& f, double xdot_value, double dx,
                               const FrameOptions& opt) {
    const GasParams& g = f.gas();
    const std::size_t n = s.v.size();
    if (bar.size() != n || n < 4) throw PreconditionError("frame needs matching grid samples");
    DiagnosticsFrame fr;
    fr.t = s.t;
    fr.shift = s.shift;
    fr.xdot = xdot_value;
    fr.xdot_sq = xdot_value * xdot_value;

    const bool weighted = f.weight_enabled();
    double c_star = 0.0;
    if (weighted) {
        const ShiftParams sp = make_shift_params(f.chart(), g);
        c_star = 1.0 / (2.0 * sp.sigma_star) -
                 std::sqrt(f.chart().delta_s) * (g.gamma + 1.0) / (2.0 * g.gamma * sp.p_star);
    }

    std::vector<double> dv(n), du(n), dp(n);
    for (std::size_t i = 0; i < n; ++i) {
        dv[i] = s.v[i] - bar[i].v;
        du[i] = s.u[i] - bar[i].u;
        dp[i] = pressure_difference(s.v[i], bar[i].v, g);
    }
    auto d1 = [&](const std::vector<double>& q, std::size_t i) {
        if (i == 0) return (-3.0 * q[0] + 4.0 * q[1] - q[2]) / (2.0 * dx);
        if (i + 1 == n) return (3.0 * q[n - 1] - 4.0 * q[n - 2] + q[n - 3]) / (2.0 * dx);
        return (q[i + 1] - q[i - 1]) / (2.0 * dx);
    };

    double l2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = ((i == 0 || i + 1 == n) ? 0.5 : 1.0) * dx;
        const CompositeSample& b = bar[i];
        const WeightSample a = f.weight_of(b.shock);
        const double q = relative_internal_energy(s.v[i], b.v, g);
        const double prel = relative_pressure(s.v[i], b.v, g);
        const double eta = q + 0.5 * du[i] * du[i];
        const double dvx = d1(dv, i);
        const double dux = d1(du, i);
        const double dpx = d1(dp, i);

        fr.rel_entropy += w * eta;
        fr.weighted_rel_entropy += w * a.a * eta;
        fr.g_s += w * std::abs(b.shock.u_x) * du[i] * du[i];
        if (weighted) {
            const double e = dp[i] - du[i] / (2.0 * c_star);
            fr.g_1 += w * c_star * a.a_x * e * e;
            fr.g_2 += w * 0.5 * f.chart().sigma * a.a_x * du[i] * du[i];
        }
        fr.g_bl += w * a.a * b.bl.u_x * prel;
        fr.g_r += w * a.a * b.r.u_x * prel;
        fr.g_v += w * std::abs(b.u_x) * dv[i] * dv[i];
        fr.d_v1 += w * dpx * dpx / (g.gamma * pressure(s.v[i], g));
        fr.d_v += w * dpx * dpx;
        fr.d_u1 += w * a.a / s.v[i] * dux * dux;
        fr.d_u1_plain += w * dux * dux;
        fr.g_val += w * (dvx * dvx + dux * dux);
        l2 += w * (dv[i] * dv[i] + du[i] * du[i]);
        fr.sup_perturbation = std::max({fr.sup_perturbation, std::abs(dv[i]), std::abs(du[i])});
    }
    fr.h1_sq = l2 + fr.g_val;

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double uxx = (du[i + 1] - 2.0 * du[i] + du[i - 1]) / (dx * dx);
        const double w = ((i == 1 || i + 2 == n) ? 0.5 : 1.0) * dx;
        fr.d_u2 += w * uxx * uxx / s.v[i];
        fr.d_u2_plain += w * uxx * uxx;
    }
    {
        const double u0 = (2.0 * du[0] - 5.0 * du[1] + 4.0 * du[2] - du[3]) / (dx * dx);
        const double un = (2.0 * du[n - 1] - 5.0 * du[n - 2] + 4.0 * du[n - 3] - du[n - 4]) / (dx * dx);
        // the end cells between node 0/1 and n-2/n-1 carry the one-sided values
        fr.d_u2_boundary = 0.5 * dx * (u0 * u0 / s.v[0] + un * un / s.v[n - 1]);
    }

    fr.j_bd = boundary_terms(s, bar, f, dx);

    if (opt.interactions) {
        const Interactions in = wave_interactions(s.t, f, opt.interaction_tol);
        fr.interaction1 = in.i1;
        fr.interaction2 = in.i2;
        fr.interaction3 = in.i3;
        fr.interaction_l2 = in.l2;
    }
    if (opt.poincare && f.chart().has_shock()) {
        const PoincareResult p = poincare_on_solution(s.u, bar, f, dx);
        fr.poincare_lhs = p.lhs;
        fr.poincare_rhs = p.rhs;
    }
    return fr;
}

}  // namespace wavelab
