#include "pushpull/chain.hpp"

#include "pushpull/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pushpull {

namespace {

void require_capacity(std::int64_t cells, const char* what) {
    if (cells > kMaxTableCells) {
        throw CapacityError(std::string(what) + ": " + std::to_string(cells) +
                            " lattice cells exceed the limit of " +
                            std::to_string(kMaxTableCells));
    }
}

void require_state(const ChainParams& params, State s) {
    if (!is_valid_state(params, s)) {
        throw std::domain_error("state (" + std::to_string(s.a) + ", " + std::to_string(s.b) +
                                ") outside [1, " + std::to_string(params.n) + "] x [0, " +
                                std::to_string(params.m) + "]");
    }
}

// Integer numerators of the move probabilities over the common denominator n*m.
// Kept integral so that mirrored states of a square chain give bit-identical
// probabilities.
struct MoveWeights {
    double right;
    double up;
};

MoveWeights move_weights(const ChainParams& p, std::int64_t a, std::int64_t b) {
    return {static_cast<double>(b * (p.n - a)), static_cast<double>((p.m - b) * a)};
}

// Recurrence E(a,b) = (nm + wr*E(a+1,b) + wu*E(a,b+1)) / (wr + wu), which is
// E = (1 + p_right*E_right + p_up*E_up) / (1 - p_stay) scaled by nm.
double backward_cell(const ChainParams& p, std::int64_t a, std::int64_t b, double e_right,
                     double e_up) {
    const auto w = move_weights(p, a, b);
    const double scale = static_cast<double>(p.cells());
    double num = scale;
    if (a < p.n) num += w.right * e_right;
    if (b < p.m) num += w.up * e_up;
    return num / (w.right + w.up);
}

} // namespace

ChainParams::ChainParams(std::int64_t static_count, std::int64_t mobile_count)
    : n(static_count), m(mobile_count) {
    if (n < 1 || m < 1) {
        throw std::domain_error("chain needs n >= 1 and m >= 1, got n=" + std::to_string(n) +
                                ", m=" + std::to_string(m));
    }
}

bool is_valid_state(const ChainParams& params, State s) {
    return s.a >= 1 && s.a <= params.n && s.b >= 0 && s.b <= params.m;
}

bool is_absorbing(const ChainParams& params, State s) {
    return s.a == params.n && s.b == params.m;
}

StepDistribution step_distribution(const ChainParams& params, State s) {
    require_state(params, s);
    const auto w = move_weights(params, s.a, s.b);
    const double scale = static_cast<double>(params.cells());
    StepDistribution d;
    d.p_right = w.right / scale;
    d.p_up = w.up / scale;
    d.p_stay = 1.0 - (d.p_right + d.p_up);
    return d;
}

double stay_probability(const ChainParams& params, State s) {
    return step_distribution(params, s).p_stay;
}

double expected_stay_rounds(const ChainParams& params, State s) {
    require_state(params, s);
    if (is_absorbing(params, s)) {
        throw std::domain_error("expected_stay_rounds: the absorbing state is never left");
    }
    const auto w = move_weights(params, s.a, s.b);
    return static_cast<double>(params.cells()) / (w.right + w.up);
}

double HittingTimeTable::at(State s) const {
    require_state(params_, s);
    if (s.b == 0) {
        if (s.a != 1) {
            throw std::domain_error("state (" + std::to_string(s.a) + ", 0) is unreachable");
        }
        return origin_;
    }
    return values_[static_cast<std::size_t>((s.a - 1) * params_.m + (s.b - 1))];
}

HittingTimeTable solve_hitting_times(const ChainParams& params) {
    require_capacity(params.cells(), "solve_hitting_times");
    const auto n = params.n;
    const auto m = params.m;
    std::vector<double> values(static_cast<std::size_t>(n * m), 0.0);
    auto cell = [&](std::int64_t a, std::int64_t b) -> double& {
        return values[static_cast<std::size_t>((a - 1) * m + (b - 1))];
    };
    for (std::int64_t a = n; a >= 1; --a) {
        for (std::int64_t b = m; b >= 1; --b) {
            if (a == n && b == m) continue;
            const double e_right = a < n ? cell(a + 1, b) : 0.0;
            const double e_up = b < m ? cell(a, b + 1) : 0.0;
            cell(a, b) = backward_cell(params, a, b, e_right, e_up);
        }
    }
    // Phase 1 is Geometric(1/n) and independent of what follows.
    const double origin = static_cast<double>(n) + cell(1, 1);
    return HittingTimeTable(params, std::move(values), origin);
}

double expected_phase2_time(const ChainParams& params) {
    require_capacity(params.cells(), "expected_phase2_time");
    const auto n = params.n;
    const auto m = params.m;
    // next[b] holds E(a + 1, b), cur[b] is filled for the current a.
    std::vector<double> next(static_cast<std::size_t>(m + 2), 0.0);
    std::vector<double> cur(static_cast<std::size_t>(m + 2), 0.0);
    for (std::int64_t a = n; a >= 1; --a) {
        for (std::int64_t b = m; b >= 1; --b) {
            if (a == n && b == m) {
                cur[b] = 0.0;
                continue;
            }
            cur[b] = backward_cell(params, a, b, next[b], cur[b + 1]);
        }
        std::swap(cur, next);
    }
    return next[1];
}

double expected_total_time(const ChainParams& params) {
    return static_cast<double>(params.n) + expected_phase2_time(params);
}

double PhaseBoundaryDistribution::at(std::int64_t a) const {
    if (a < 1 || a > n) return 0.0;
    return mass[static_cast<std::size_t>(a - 1)];
}

double PhaseBoundaryDistribution::total() const {
    return std::accumulate(mass.begin(), mass.end(), 0.0);
}

double PhaseBoundaryDistribution::mean() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) acc += static_cast<double>(i + 1) * mass[i];
    return acc;
}

PhaseBoundaryDistribution phase_boundary_distribution(const ChainParams& params,
                                                      std::int64_t phase) {
    if (phase < 1 || phase > params.m - 1) {
        throw std::domain_error("phase " + std::to_string(phase) + " outside [1, " +
                                std::to_string(params.m - 1) + "]");
    }
    require_capacity(params.n * phase, "phase_boundary_distribution");
    const auto n = params.n;
    // Forward propagation on the jump chain, one row of constant b at a time.
    // inflow[a - 1] is the probability of entering (a, b) from below.
    std::vector<double> inflow(static_cast<std::size_t>(n), 0.0);
    inflow[0] = 1.0; // (1, 1) right after phase 1
    std::vector<double> upflow(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t b = 1; b <= phase; ++b) {
        double carried = 0.0; // mass arriving from the left
        for (std::int64_t a = 1; a <= n; ++a) {
            const double here = inflow[static_cast<std::size_t>(a - 1)] + carried;
            const auto w = move_weights(params, a, b);
            const double leave = w.right + w.up;
            upflow[static_cast<std::size_t>(a - 1)] = here * (w.up / leave);
            carried = here * (w.right / leave);
        }
        std::swap(inflow, upflow);
    }
    return {n, phase, std::move(inflow)};
}

double JointBoundaryDistribution::at(std::int64_t a, std::int64_t b) const {
    if (a < 1 || b < a || b > n) return 0.0;
    return mass[static_cast<std::size_t>((a - 1) * n + (b - 1))];
}

double JointBoundaryDistribution::total() const {
    return std::accumulate(mass.begin(), mass.end(), 0.0);
}

PhaseBoundaryDistribution JointBoundaryDistribution::first_marginal() const {
    PhaseBoundaryDistribution out{n, 1, std::vector<double>(static_cast<std::size_t>(n), 0.0)};
    for (std::int64_t a = 1; a <= n; ++a)
        for (std::int64_t b = a; b <= n; ++b) out.mass[static_cast<std::size_t>(a - 1)] += at(a, b);
    return out;
}

PhaseBoundaryDistribution JointBoundaryDistribution::second_marginal() const {
    PhaseBoundaryDistribution out{n, 2, std::vector<double>(static_cast<std::size_t>(n), 0.0)};
    for (std::int64_t a = 1; a <= n; ++a)
        for (std::int64_t b = a; b <= n; ++b) out.mass[static_cast<std::size_t>(b - 1)] += at(a, b);
    return out;
}

JointBoundaryDistribution joint_boundary_distribution(const ChainParams& params) {
    if (params.m < 3) {
        throw std::domain_error("joint boundary law needs m >= 3, got m=" +
                                std::to_string(params.m));
    }
    const auto n = params.n;
    require_capacity(n * n, "joint_boundary_distribution");
    const auto first = phase_boundary_distribution(params, 1);
    JointBoundaryDistribution joint{n, std::vector<double>(static_cast<std::size_t>(n * n), 0.0)};
    for (std::int64_t a = 1; a <= n; ++a) {
        double reach = first.at(a);
        for (std::int64_t b = a; b <= n && reach > 0.0; ++b) {
            const auto w = move_weights(params, b, 2);
            const double leave = w.right + w.up;
            joint.mass[static_cast<std::size_t>((a - 1) * n + (b - 1))] = reach * (w.up / leave);
            reach *= w.right / leave;
        }
    }
    return joint;
}

DiagonalExtrema diagonal_extrema(const ChainParams& params, std::int64_t a) {
    if (params.n != params.m) {
        throw std::domain_error("diagonal_extrema needs a square chain, got n=" +
                                std::to_string(params.n) + ", m=" + std::to_string(params.m));
    }
    const auto n = params.n;
    if (a < 2 || a > 2 * n - 1) {
        throw std::domain_error("anti-diagonal " + std::to_string(a) + " outside [2, " +
                                std::to_string(2 * n - 1) + "]");
    }
    const std::int64_t lo = std::max<std::int64_t>(1, a - n);
    const std::int64_t hi = std::min<std::int64_t>(n, a - 1);

    DiagonalExtrema out;
    out.max_stay = -1.0;
    out.min_stay = 2.0;
    for (std::int64_t i = lo; i <= hi; ++i) {
        const State s{i, a - i};
        const double p = stay_probability(params, s);
        // Strict comparisons keep the first (lexicographically smallest) state on ties.
        if (p > out.max_stay) {
            out.max_stay = p;
            out.argmax = s;
        }
        if (p < out.min_stay) {
            out.min_stay = p;
            out.argmin = s;
        }
    }
    const std::int64_t half = a / 2;
    const double balanced = stay_probability(params, {half, a - half});
    const double extreme = stay_probability(params, {lo, a - lo});
    out.matches_balanced_split = balanced == out.max_stay && extreme == out.min_stay;
    return out;
}

} // namespace pushpull
