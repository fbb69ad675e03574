#pragma once

#include <cstdint>
#include <vector>

namespace pushpull {

/// Raw simulator sample: clock value and informed counts.
struct TrajectoryPoint {
    double time = 0.0;
    std::int64_t a = 0;
    std::int64_t b = 0;
};

using Trajectory = std::vector<TrajectoryPoint>;

/// Sample expressed as informed proportions: x static, y mobile.
struct ProportionPoint {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
};

using ProportionPath = std::vector<ProportionPoint>;

} // namespace pushpull
