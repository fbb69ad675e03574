#include "pushpull/fluid.hpp"

#include "pushpull/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace pushpull {

namespace {

// 1/e split into a double and its rounding residue.
constexpr double kInvEHi = 0.36787944117144233;
constexpr double kInvELo = -1.2428753672788363e-17;
constexpr double kBranchTolerance = 1e-12;

// Series of W0 around the branch point in p = sqrt(2 (e z + 1)).
double branch_series(double p) {
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
}

} // namespace

double lambert_w0(double z) {
    if (std::isnan(z)) throw std::domain_error("lambert_w0: NaN argument");
    const double dz = (z + kInvEHi) + kInvELo; // z + 1/e
    if (dz < -kBranchTolerance) {
        throw std::domain_error("lambert_w0: argument below -1/e");
    }
    if (dz <= 0.0) return -1.0;
    if (z == 0.0) return 0.0;
    if (std::isinf(z)) return z;

    double w;
    if (z < -0.25) {
        const double p = std::sqrt(2.0 * std::numbers::e * dz);
        w = branch_series(p);
        if (p < 1e-3) return w;
    } else if (z < 3.0) {
        w = std::log1p(z);
    } else {
        const double l1 = std::log(z);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    for (int iter = 0; iter < 100; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        const double wp1 = w + 1.0;
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        const double step = f / denom;
        w -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
    }
    return std::max(w, -1.0);
}

FluidParams::FluidParams(double ratio, double mobile_count) : alpha(ratio), n(mobile_count) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::domain_error("fluid alpha must be > 0");
    if (!(n >= 1.0) || !std::isfinite(n)) throw std::domain_error("fluid n must be >= 1");
    if (!(alpha * n >= 1.0)) throw std::domain_error("fluid alpha * n must be >= 1");
}

FluidParams fluid_params_for(const ChainParams& params) {
    const double mobile = static_cast<double>(params.m);
    return FluidParams(static_cast<double>(params.n) / mobile, mobile);
}

double default_fluid_dt(const FluidParams& params) { return std::min(0.01, params.n / 1e4); }

double default_fluid_t_max(const FluidParams& params) {
    return 10.0 * params.n * (1.0 + std::log(params.n));
}

FluidCurve fluid_trajectory(const FluidParams& params, double t_max, double dt,
                            std::size_t max_samples, double halt_gap) {
    if (!(dt > 0.0)) throw std::domain_error("fluid_trajectory: dt must be > 0");
    if (!(t_max > 0.0)) throw std::domain_error("fluid_trajectory: t_max must be > 0");
    const double kx = 1.0 / (params.alpha * params.n);
    const double ky = 1.0 / params.n;
    // u = 1 - x, v = 1 - y
    auto rhs = [&](double u, double v) {
        return std::pair{-kx * u * (1.0 - v), -ky * (1.0 - u) * v};
    };

    const auto total_steps = static_cast<std::size_t>(std::ceil(t_max / dt));
    const std::size_t every = std::max<std::size_t>(1, total_steps / std::max<std::size_t>(1, max_samples));

    FluidCurve curve{params, {}, {}};
    auto record = [&](double t, double u, double v) {
        curve.samples.push_back({t, 1.0 - u, 1.0 - v});
        curve.gaps.push_back({u, v});
    };
    double t = 0.0;
    double u = 1.0 - params.x0();
    double v = 1.0 - params.y0();
    record(t, u, v);
    for (std::size_t step = 1; step <= total_steps; ++step) {
        const double h = std::min(dt, t_max - t);
        const auto [k1u, k1v] = rhs(u, v);
        const auto [k2u, k2v] = rhs(u + 0.5 * h * k1u, v + 0.5 * h * k1v);
        const auto [k3u, k3v] = rhs(u + 0.5 * h * k2u, v + 0.5 * h * k2v);
        const auto [k4u, k4v] = rhs(u + h * k3u, v + h * k3v);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        t = step == total_steps ? t_max : static_cast<double>(step) * dt;
        const bool done = std::max(u, v) < halt_gap || step == total_steps;
        if (step % every == 0 || done) record(t, u, v);
        if (done) break;
    }
    return curve;
}

double fluid_phase_gap(const FluidParams& params, double u) {
    const double u_hi = 1.0 - params.x0();
    if (std::isnan(u) || u < -kBranchTolerance || u > u_hi + kBranchTolerance) {
        throw std::domain_error("fluid_phase_curve: x outside [1/(alpha n), 1]");
    }
    if (!(u_hi > 0.0)) {
        throw std::domain_error("fluid_phase_curve: undefined for a single static node");
    }
    u = std::clamp(u, 0.0, u_hi);
    // (x-1)^alpha / (x0-1)^alpha regrouped as a power of a non-negative base.
    double z = (1.0 / params.n - 1.0) * std::pow(u / u_hi, params.alpha) *
               std::exp(params.alpha * (1.0 - u) - 1.0);
    const double dz = (z + kInvEHi) + kInvELo;
    if (dz < 0.0) {
        if (dz < -kBranchTolerance) {
            throw NumericalError("fluid_phase_curve: Lambert argument " + std::to_string(z) +
                                 " below -1/e");
        }
        z = -(kInvEHi + kInvELo);
    }
    if (z > 0.0) {
        throw NumericalError("fluid_phase_curve: Lambert argument " + std::to_string(z) + " above 0");
    }
    return -lambert_w0(z);
}

double fluid_phase_curve(const FluidParams& params, double x) {
    if (std::isnan(x)) throw std::domain_error("fluid_phase_curve: x is NaN");
    return 1.0 - fluid_phase_gap(params, 1.0 - x);
}

double ode_closed_form_deviation(const FluidCurve& curve) {
    double worst = 0.0;
    for (const auto& g : curve.gaps) {
        worst = std::max(worst, std::abs(g.v - fluid_phase_gap(curve.params, g.u)));
    }
    return worst;
}

double sup_deviation(std::span<const ProportionPoint> path, const FluidParams& params) {
    double worst = 0.0;
    for (const auto& pt : path) {
        worst = std::max(worst, std::abs(pt.y - fluid_phase_curve(params, pt.x)));
    }
    return worst;
}

} // namespace pushpull
