#pragma once

// Mean-field limit of the push-pull process. With x, y the informed static and
// mobile proportions, alpha = static/mobile and n the mobile count:
//
//   x' = (1 - x) y / (alpha n),   y' = x (1 - y) / n,
//   x(0) = 1/(alpha n),           y(0) = 1/n.
//
// Its orbit y(x) has a closed form through the principal Lambert W branch.

#include "pushpull/chain.hpp"
#include "pushpull/trajectory.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace pushpull {

/// Principal branch W0 on [-1/e, inf). Arguments within 1e-12 below -1/e are
/// treated as the branch point; anything lower throws std::domain_error.
double lambert_w0(double z);

struct FluidParams {
    double alpha = 1.0; ///< static / mobile
    double n = 1.0;     ///< mobile count

    FluidParams() = default;
    /// Throws std::domain_error unless alpha > 0, n >= 1 and alpha * n >= 1.
    FluidParams(double ratio, double mobile_count);

    double static_count() const { return alpha * n; }
    double x0() const { return 1.0 / (alpha * n); }
    double y0() const { return 1.0 / n; }
};

/// alpha = n_static / n_mobile and n = n_mobile.
FluidParams fluid_params_for(const ChainParams& params);

/// Uninformed fractions 1 - x and 1 - y. Near absorption these keep full
/// relative precision where x and y themselves round to 1.
struct FluidGap {
    double u = 0.0;
    double v = 0.0;
};

struct FluidCurve {
    FluidParams params;
    std::vector<ProportionPoint> samples; ///< ordered in t
    std::vector<FluidGap> gaps;           ///< parallel to samples
};

/// min(0.01, n / 1e4)
double default_fluid_dt(const FluidParams& params);
/// 10 n (1 + ln n)
double default_fluid_t_max(const FluidParams& params);

/// Classical RK4 from the initial condition until t_max, or earlier once
/// 1 - min(x, y) < halt_gap. The state is carried as (1 - x, 1 - y). At most about `max_samples` evenly thinned
/// samples are kept; the first and last step are always present.
/// Throws std::domain_error unless dt > 0 and t_max > 0.
FluidCurve fluid_trajectory(const FluidParams& params, double t_max, double dt,
                            std::size_t max_samples = 20000, double halt_gap = 1e-9);

/// y as a function of x along the mean-field orbit, for x in [1/(alpha n), 1].
/// Throws std::domain_error outside that range and NumericalError if the
/// Lambert argument leaves [-1/e, 0] by more than 1e-12.
double fluid_phase_curve(const FluidParams& params, double x);

/// The same orbit in uninformed fractions: 1 - y as a function of u = 1 - x,
/// for u in [0, 1 - 1/(alpha n)]. Same errors as fluid_phase_curve.
double fluid_phase_gap(const FluidParams& params, double u);

/// max |(1 - y) - fluid_phase_gap(1 - x)| over the curve, using the stored gaps.
double ode_closed_form_deviation(const FluidCurve& curve);

/// max |y - fluid_phase_curve(x)| over the samples; 0 for an empty path.
double sup_deviation(std::span<const ProportionPoint> path, const FluidParams& params);

} // namespace pushpull
