#pragma once

// Figure-ready tables: the square-chain bounds and the simulated bands around
// the mean-field orbit.

#include "pushpull/trajectory.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pushpull {

struct BoundsRow {
    std::int64_t n = 0;
    double exact = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

/// Rows for n = 2 and every multiple of `n_step` up to n_max.
std::vector<BoundsRow> bounds_figure(std::int64_t n_max, std::int64_t n_step);

struct FluidFigureSpec {
    std::string id;
    double alpha = 1.0;
    std::int64_t n_mobile = 1;
    std::int64_t n_static() const;
};

/// fluid-a: alpha = 1, 250 mobile; fluid-b: alpha = 1/10, 1000 mobile;
/// fluid-c: alpha = 4, 125 mobile. Throws std::invalid_argument otherwise.
FluidFigureSpec fluid_figure_spec(const std::string& id);

struct FluidBandRow {
    double x = 0.0;
    double y_sim_band_low = 0.0;
    double y_sim_band_high = 0.0;
    double y_closed_form = 0.0;
};

/// Range [low, high] of y a path occupies at static proportion x. A path that
/// crosses x horizontally gives low == high.
std::pair<double, double> path_y_range_at(const ProportionPath& path, double x);

/// Envelope of `replicas` simulated paths on an even x-grid of `grid_points`
/// points over [1/n_static, 1], with the closed-form orbit alongside.
std::vector<FluidBandRow> fluid_band_figure(const FluidFigureSpec& spec, std::uint64_t replicas,
                                            std::uint64_t seed, std::int64_t grid_points = 201);

/// Share of rows whose band contains the closed-form value.
double band_coverage(const std::vector<FluidBandRow>& rows);

} // namespace pushpull
