#include "wavelab/fit.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "wavelab/errors.hpp"

namespace wavelab {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw PreconditionError("line fit needs two or more points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw PreconditionError("line fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> y,
                         const std::function<double(double, double)>& model, double c_lo,
                         double c_hi) {
    if (t.size() != y.size() || t.empty()) throw PreconditionError("envelope fit needs samples");
    auto log_amplitude = [&](double c) {
        double s = 0.0;
        int k = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!(y[i] > 0.0)) continue;
            s += std::log(y[i]) - std::log(model(c, t[i]));
            ++k;
        }
        return k ? s / k : 0.0;
    };
    auto objective = [&](double c) {
        const double la = log_amplitude(c);
        double s = 0.0;
        int k = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!(y[i] > 0.0)) continue;
            const double m = model(c, t[i]);
            if (!(m > 0.0) || !std::isfinite(m)) return std::numeric_limits<double>::max();
            const double r = std::log(y[i]) - la - std::log(m);
            s += r * r;
            ++k;
        }
        return k ? s / k : 0.0;
    };
    // coarse scan to bracket the global minimum, then Brent inside the bracket
    const int scan = 200;
    int best_i = 0;
    double best_v = std::numeric_limits<double>::max();
    for (int i = 0; i <= scan; ++i) {
        const double v = objective(c_lo + (c_hi - c_lo) * i / scan);
        if (v < best_v) {
            best_v = v;
            best_i = i;
        }
    }
    const double a = c_lo + (c_hi - c_lo) * std::max(best_i - 1, 0) / scan;
    const double b = c_lo + (c_hi - c_lo) * std::min(best_i + 1, scan) / scan;
    const auto best = boost::math::tools::brent_find_minima(objective, a, b, 40);
    EnvelopeFit f;
    f.c = best.first;
    f.amplitude = std::exp(log_amplitude(f.c));
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (y[i] > 0.0) f.envelope = std::max(f.envelope, y[i] / model(f.c, t[i]));
    }
    f.rms_log = std::sqrt(best.second);
    const double span = c_hi - c_lo;
    f.at_bound = (f.c - c_lo) < 1e-6 * span || (c_hi - f.c) < 1e-6 * span;
    return f;
}

BoundaryLayerDecay fit_boundary_layer_decay(const ProfileTable& bl, double delta_bl, double xi_lo,
                                            double xi_hi, int samples) {
    if (!(xi_hi > xi_lo && xi_lo > 0.0) || samples < 2) {
        throw PreconditionError("decay window must satisfy 0 < xi_lo < xi_hi");
    }
    std::vector<double> x, y0, y1, y2;
    for (int i = 0; i < samples; ++i) {
        const double xi = xi_lo * std::pow(xi_hi / xi_lo, double(i) / (samples - 1));
        const ProfileSample s = bl.sample(xi);
        x.push_back(std::log1p(delta_bl * xi));
        y0.push_back(std::log(s.dev_right));
        y1.push_back(std::log(std::abs(s.v_x)));
        y2.push_back(std::log(std::abs(s.v_xx)));
    }
    BoundaryLayerDecay d;
    d.k0 = -fit_line(x, y0).slope;
    d.k1 = -fit_line(x, y1).slope;
    d.k2 = -fit_line(x, y2).slope;
    d.xi_lo = xi_lo;
    d.xi_hi = xi_hi;
    return d;
}

ShockDecay fit_shock_decay(const ProfileTable& shock, double z_lo, double z_hi, int samples) {
    if (!(z_hi > z_lo && z_lo >= 0.0) || samples < 2) {
        throw PreconditionError("decay window must satisfy 0 <= z_lo < z_hi");
    }
    std::vector<double> z, yl, yr;
    for (int i = 0; i < samples; ++i) {
        const double s = z_lo + (z_hi - z_lo) * i / (samples - 1);
        z.push_back(s);
        yl.push_back(std::log(shock.sample(-s).dev_left));
        yr.push_back(std::log(shock.sample(s).dev_right));
    }
    ShockDecay d;
    d.left = -fit_line(z, yl).slope;
    d.right = -fit_line(z, yr).slope;
    d.z_lo = z_lo;
    d.z_hi = z_hi;
    return d;
}

}  // namespace wavelab
