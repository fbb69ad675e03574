#pragma once

// Monte Carlo engine for the push-pull process, in discrete rounds or with
// Poisson activation of the mobile nodes.
//
// Replica i of a batch draws from Xoshiro256(replica_seed(master_seed, i)),
// so a batch summary depends only on the configuration, never on how the
// replicas were scheduled across threads.

#include "pushpull/chain.hpp"
#include "pushpull/trajectory.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace pushpull {

enum class ClockMode { rounds, poisson };

struct Clock {
    ClockMode mode = ClockMode::rounds;
    double lambda = 1.0; ///< per-mobile activation rate, poisson mode only

    static Clock rounds() { return {}; }
    /// Throws std::domain_error unless lambda > 0.
    static Clock poisson(double lambda);
};

enum class Engine {
    /// Tracks (a, b) only and jumps over idle events in one geometric draw.
    jump,
    /// Keeps per-node informed flags and draws every contact explicitly.
    node_level,
};

struct ReplicaOptions {
    Engine engine = Engine::jump;
    bool record_trajectory = false;
    /// Record every k-th state change (the start and the final state are always kept).
    std::int64_t trajectory_stride = 1;
};

struct ReplicaResult {
    std::uint64_t steps = 0;       ///< contacts until absorption
    double completion_time = 0.0;  ///< equals steps in rounds mode
    std::uint64_t phase1_steps = 0;
    /// boundary_static_counts[k] is the static count when b went from k to k + 1.
    std::vector<std::int64_t> boundary_static_counts;
    Trajectory trajectory;
};

/// Throws std::domain_error for a stride below 1.
ReplicaResult run_replica(const ChainParams& params, std::uint64_t seed, const Clock& clock,
                          const ReplicaOptions& options = {});

/// 1 for n <= 1000, otherwise ceil((n + m) / 2000).
std::int64_t default_trajectory_stride(const ChainParams& params);

struct SimConfig {
    ChainParams params;
    std::uint64_t replicas = 1;
    std::uint64_t master_seed = 0;
    Clock clock;
    Engine engine = Engine::jump;
    bool record_trajectories = false;
    std::int64_t trajectory_stride = 0; ///< 0 selects default_trajectory_stride
    /// Boundary b = phase -> phase + 1 tallied in the summary histogram; ignored when m = 1.
    std::int64_t histogram_phase = 1;
    std::size_t memory_cap_bytes = std::size_t{1} << 30;
    unsigned threads = 0; ///< 0 selects std::thread::hardware_concurrency()
};

/// Throws std::domain_error when a field is out of range.
void validate(const SimConfig& config);

struct Quantiles {
    double q01 = 0.0;
    double q25 = 0.0;
    double q50 = 0.0;
    double q75 = 0.0;
    double q99 = 0.0;
};

struct SampleSummary {
    double mean = 0.0;
    double variance = 0.0; ///< unbiased
    double standard_error = 0.0;
    Quantiles quantiles;
};

/// Mean, unbiased variance and nearest-rank quantiles, reduced in index order.
SampleSummary summarize(const std::vector<double>& values);

struct SimSummary {
    std::uint64_t replica_count = 0;
    SampleSummary steps;
    SampleSummary phase1_steps;
    std::optional<SampleSummary> completion_time; ///< poisson mode only
    std::int64_t histogram_phase = 0;             ///< 0 when m = 1
    /// boundary_histogram[a - 1] counts replicas whose tallied boundary fell at a.
    std::vector<std::uint64_t> boundary_histogram;
};

struct BatchResult {
    SimSummary summary;
    std::vector<Trajectory> trajectories; ///< one per replica when recorded
};

/// Throws CapacityError if the per-replica records or the requested
/// trajectories would exceed config.memory_cap_bytes.
BatchResult run_batch(const SimConfig& config);

/// Maps (time, a, b) to (t, a/n, b/m). Time is rescaled so one unit is one
/// expected activation per mobile node: t/m for rounds, t*lambda for poisson.
std::vector<ProportionPath> normalized_trajectories(const std::vector<Trajectory>& bundle,
                                                    const ChainParams& params,
                                                    const Clock& clock);

} // namespace pushpull
