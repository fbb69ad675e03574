#pragma once

// Exact treatment of the push-pull chain on the complete bipartite graph
// K(n static, m mobile). A state (a, b) counts informed static and informed
// mobile nodes; the process starts at (1, 0) and is absorbed at (n, m).

#include <cstdint>
#include <utility>
#include <vector>

namespace pushpull {

/// Largest n*m a lattice table may hold.
inline constexpr std::int64_t kMaxTableCells = 100'000'000;

struct ChainParams {
    std::int64_t n = 1; ///< static nodes
    std::int64_t m = 1; ///< mobile nodes

    ChainParams() = default;
    /// Throws std::domain_error unless n >= 1 and m >= 1.
    ChainParams(std::int64_t static_count, std::int64_t mobile_count);

    std::int64_t cells() const { return n * m; }
    friend bool operator==(const ChainParams&, const ChainParams&) = default;
};

struct State {
    std::int64_t a = 1; ///< informed static nodes
    std::int64_t b = 0; ///< informed mobile nodes
    friend bool operator==(const State&, const State&) = default;
    friend auto operator<=>(const State&, const State&) = default;
};

/// 1 <= a <= n and 0 <= b <= m.
bool is_valid_state(const ChainParams& params, State s);
bool is_absorbing(const ChainParams& params, State s);

struct StepDistribution {
    double p_right = 0.0; ///< (a, b) -> (a + 1, b)
    double p_up = 0.0;    ///< (a, b) -> (a, b + 1)
    double p_stay = 1.0;  ///< complement of the two moves
};

/// One-round transition law. Throws std::domain_error for invalid states.
StepDistribution step_distribution(const ChainParams& params, State s);

double stay_probability(const ChainParams& params, State s);

/// Mean number of rounds spent in `s`, counting the round that leaves it.
/// Throws std::domain_error for the absorbing state.
double expected_stay_rounds(const ChainParams& params, State s);

/// Expected remaining rounds until absorption for every reachable state:
/// the origin (1, 0) and the block [1, n] x [1, m]. States (a, 0) with a >= 2
/// cannot be reached and are not stored.
class HittingTimeTable {
public:
    const ChainParams& params() const { return params_; }

    /// Throws std::domain_error for invalid or unreachable states.
    double at(State s) const;

    double from_origin() const { return origin_; }
    double from_first_contact() const { return at({1, 1}); }

private:
    friend HittingTimeTable solve_hitting_times(const ChainParams& params);

    HittingTimeTable(ChainParams params, std::vector<double> values, double origin)
        : params_(params), values_(std::move(values)), origin_(origin) {}

    ChainParams params_;
    std::vector<double> values_; // row-major over a in [1, n], b in [1, m]
    double origin_;
};

/// Backward dynamic program over the lattice, O(n*m) time and memory.
/// Throws CapacityError when n*m exceeds kMaxTableCells.
HittingTimeTable solve_hitting_times(const ChainParams& params);

/// E[T] from (1, 0). Same recurrence as solve_hitting_times with O(m) memory.
/// Throws CapacityError when n*m exceeds kMaxTableCells.
double expected_total_time(const ChainParams& params);

/// E[L] from (1, 1); expected_total_time is exactly n + this value.
double expected_phase2_time(const ChainParams& params);

/// Law of the static count `a` at which the mobile count jumps from
/// `phase` to `phase + 1`.
struct PhaseBoundaryDistribution {
    std::int64_t n = 0;
    std::int64_t phase = 0;
    std::vector<double> mass; ///< mass[a - 1] for a in [1, n]

    double at(std::int64_t a) const;
    double total() const;
    double mean() const;
};

/// Throws std::domain_error unless 1 <= phase <= m - 1.
PhaseBoundaryDistribution phase_boundary_distribution(const ChainParams& params,
                                                      std::int64_t phase);

/// Joint law of the first two boundaries (1 -> 2 at static count a, 2 -> 3 at
/// static count b, a <= b). For m = 3 this is the full path law.
struct JointBoundaryDistribution {
    std::int64_t n = 0;
    std::vector<double> mass; ///< row-major (a - 1) * n + (b - 1); zero below the diagonal

    double at(std::int64_t a, std::int64_t b) const;
    double total() const;
    PhaseBoundaryDistribution first_marginal() const;
    PhaseBoundaryDistribution second_marginal() const;
};

/// Requires m >= 3. Throws std::domain_error otherwise; CapacityError if
/// n*n exceeds kMaxTableCells.
JointBoundaryDistribution joint_boundary_distribution(const ChainParams& params);

/// Extremes of the stay probability along the anti-diagonal i + j = a of a
/// square chain. Ties resolve to the lexicographically smallest state.
struct DiagonalExtrema {
    State argmax;
    State argmin;
    double max_stay = 0.0;
    double min_stay = 0.0;
    /// Maximum sits at the balanced split (floor(a/2), a - floor(a/2)) and
    /// minimum at the most unbalanced split that fits in the square.
    bool matches_balanced_split = false;
};

/// Requires n == m and 2 <= a <= 2n - 1; throws std::domain_error otherwise.
DiagonalExtrema diagonal_extrema(const ChainParams& params, std::int64_t a);

} // namespace pushpull
