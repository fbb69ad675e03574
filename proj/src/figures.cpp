#include "pushpull/figures.hpp"

#include "pushpull/chain.hpp"
#include "pushpull/closed_form.hpp"
#include "pushpull/fluid.hpp"
#include "pushpull/rng.hpp"
#include "pushpull/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace pushpull {

std::vector<BoundsRow> bounds_figure(std::int64_t n_max, std::int64_t n_step) {
    if (n_max < 2) throw std::domain_error("bounds figure needs n_max >= 2");
    if (n_step < 1) throw std::domain_error("bounds figure needs n_step >= 1");
    std::vector<BoundsRow> rows;
    auto add = [&](std::int64_t n) {
        const auto b = tnn_bounds(n);
        rows.push_back({n, expected_total_time({n, n}), b.lower, b.upper});
    };
    add(2);
    for (std::int64_t n = n_step; n <= n_max; n += n_step)
        if (n > 2) add(n);
    return rows;
}

std::int64_t FluidFigureSpec::n_static() const {
    return std::llround(alpha * static_cast<double>(n_mobile));
}

FluidFigureSpec fluid_figure_spec(const std::string& id) {
    if (id == "fluid-a") return {id, 1.0, 250};
    if (id == "fluid-b") return {id, 0.1, 1000};
    if (id == "fluid-c") return {id, 4.0, 125};
    throw std::invalid_argument("unknown fluid figure '" + id + "'");
}

std::pair<double, double> path_y_range_at(const ProportionPath& path, double x) {
    if (path.empty()) throw std::invalid_argument("path_y_range_at: empty path");
    // First sample at or right of x, and last sample at or left of x.
    const auto first_right = std::lower_bound(path.begin(), path.end(), x,
                                              [](const ProportionPoint& p, double v) { return p.x < v; });
    const auto past_left = std::upper_bound(path.begin(), path.end(), x,
                                            [](double v, const ProportionPoint& p) { return v < p.x; });
    const double low = first_right != path.end() ? first_right->y : path.back().y;
    const double high = past_left != path.begin() ? std::prev(past_left)->y : low;
    return {std::min(low, high), std::max(low, high)};
}

std::vector<FluidBandRow> fluid_band_figure(const FluidFigureSpec& spec, std::uint64_t replicas,
                                            std::uint64_t seed, std::int64_t grid_points) {
    if (replicas < 1) throw std::domain_error("fluid figure needs at least one replica");
    if (grid_points < 2) throw std::domain_error("fluid figure needs at least two grid points");
    const ChainParams params(spec.n_static(), spec.n_mobile);
    const auto fluid = fluid_params_for(params);
    const double x_lo = 1.0 / static_cast<double>(params.n);

    std::vector<FluidBandRow> rows(static_cast<std::size_t>(grid_points));
    for (std::int64_t i = 0; i < grid_points; ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        row.x = x_lo + (1.0 - x_lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        row.y_closed_form = fluid_phase_curve(fluid, row.x);
        row.y_sim_band_low = std::numeric_limits<double>::infinity();
        row.y_sim_band_high = -std::numeric_limits<double>::infinity();
    }

    ReplicaOptions options;
    options.record_trajectory = true;
    options.trajectory_stride = 1;
    const auto clock = Clock::rounds();
    // Paths are folded into the envelope one at a time, so memory stays O(n + m).
    for (std::uint64_t r = 0; r < replicas; ++r) {
        auto result = run_replica(params, replica_seed(seed, r), clock, options);
        const auto path = normalized_trajectories({std::move(result.trajectory)}, params, clock).front();
        for (auto& row : rows) {
            const auto [low, high] = path_y_range_at(path, row.x);
            row.y_sim_band_low = std::min(row.y_sim_band_low, low);
            row.y_sim_band_high = std::max(row.y_sim_band_high, high);
        }
    }
    return rows;
}

double band_coverage(const std::vector<FluidBandRow>& rows) {
    if (rows.empty()) return 0.0;
    const auto inside = std::count_if(rows.begin(), rows.end(), [](const FluidBandRow& r) {
        return r.y_sim_band_low <= r.y_closed_form && r.y_closed_form <= r.y_sim_band_high;
    });
    return static_cast<double>(inside) / static_cast<double>(rows.size());
}

} // namespace pushpull
