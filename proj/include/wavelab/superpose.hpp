#pragma once

// Time-dependent superposition of the boundary layer, the approximate
// rarefaction and the shifted viscous shock, plus the a-contraction weight.

#include <span>
#include <vector>

#include "wavelab/endstates.hpp"
#include "wavelab/profiles.hpp"

namespace wavelab {

struct CompositeSample {
    double v = 0.0, u = 0.0;
    double v_x = 0.0, u_x = 0.0;
    double v_xx = 0.0, u_xx = 0.0;
    double v_t = 0.0, u_t = 0.0;  // at frozen shift
    double zeta = 0.0;            // shock coordinate
    ProfileSample bl;
    RarefactionSample r;
    ProfileSample shock;
};

struct WeightSample {
    double a = 1.0;
    double a_x = 0.0;
};

/// Interaction sources of the composite-wave equation.
struct SourceTerms {
    double s_i1 = 0.0;  // pressure interaction
    double s_i2 = 0.0;  // viscous interaction
    double s_r = 0.0;   // viscous term the inviscid rarefaction ignores
    double total() const { return s_i1 + s_i2 + s_r; }
};

struct YTransform {
    std::vector<double> y;
    std::vector<double> y_x;
    double y0 = 0.0;
};

class CompositeField {
public:
    CompositeField(const WaveChart& chart, const GasParams& g, const ProfileOptions& opt = {});
    CompositeField(const WaveChart& chart, const GasParams& g, ProfileTable bl,
                   ProfileTable shock, RarefactionEvaluator r);

    const WaveChart& chart() const { return chart_; }
    const GasParams& gas() const { return gas_; }
    const ProfileTable& boundary_layer() const { return bl_; }
    const ProfileTable& shock() const { return shock_; }
    const RarefactionEvaluator& rarefaction() const { return rare_; }

    double shift() const { return x_; }
    void set_shift(double x) { x_ = x; }

    double zeta(double t, double xi) const;

    /// Ubar and its derivatives at one point; warm_w warm-starts the Burgers solve.
    CompositeSample eval(double t, double xi, double* warm_w = nullptr) const;
    void eval_grid(double t, std::span<const double> xi, std::vector<CompositeSample>& out) const;

    /// a = 1 + (u^* - u^S)/sqrt(delta_S) and its xi-derivative. Disabled
    /// (a = 1) for a chart without a shock.
    WeightSample weight(double t, double xi) const;
    WeightSample weight_of(const ProfileSample& shock_sample) const;
    bool weight_enabled() const { return chart_.has_shock(); }

    SourceTerms source(const CompositeSample& s) const;

    /// y = (u^* - u^S)/(u^* - u+) on the given abscissae; y0 = y at xi = 0.
    YTransform y_transform(double t, std::span<const double> xi) const;

private:
    WaveChart chart_;
    GasParams gas_;
    ProfileTable bl_;
    ProfileTable shock_;
    RarefactionEvaluator rare_;
    double x_ = 0.0;
    double sqrt_ds_ = 0.0;
};

}  // namespace wavelab
