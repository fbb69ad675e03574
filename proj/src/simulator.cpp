#include "pushpull/simulator.hpp"

#include "pushpull/errors.hpp"
#include "pushpull/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

namespace pushpull {

namespace {

// Accumulates one replica: counts, clock and the optional path.
class ReplicaRecorder {
public:
    ReplicaRecorder(const ChainParams& params, const Clock& clock, const ReplicaOptions& options,
                    Xoshiro256& rng)
        : params_(params), clock_(clock), options_(options), rng_(rng),
          rate_(static_cast<double>(params.m) * clock.lambda) {
        result_.boundary_static_counts.assign(static_cast<std::size_t>(params.m), 0);
        if (options_.record_trajectory) result_.trajectory.push_back({0.0, 1, 0});
    }

    // Advances the clock by `events` contacts.
    void elapse(std::uint64_t events) {
        result_.steps += events;
        if (clock_.mode == ClockMode::poisson) {
            time_ += gamma_integer_shape(rng_, events) / rate_;
        }
    }

    // Advances the clock by one contact using a single exponential gap.
    void elapse_one() {
        result_.steps += 1;
        if (clock_.mode == ClockMode::poisson) time_ += standard_exponential(rng_) / rate_;
    }

    void moved(State s, bool up) {
        if (up) {
            result_.boundary_static_counts[static_cast<std::size_t>(s.b - 1)] = s.a;
            if (s.b == 1) result_.phase1_steps = result_.steps;
        }
        ++jumps_;
        if (options_.record_trajectory &&
            (jumps_ % static_cast<std::uint64_t>(options_.trajectory_stride) == 0 ||
             is_absorbing(params_, s))) {
            result_.trajectory.push_back({current_time(), s.a, s.b});
        }
    }

    ReplicaResult finish() {
        result_.completion_time = current_time();
        return std::move(result_);
    }

private:
    double current_time() const {
        return clock_.mode == ClockMode::poisson ? time_ : static_cast<double>(result_.steps);
    }

    const ChainParams& params_;
    const Clock& clock_;
    const ReplicaOptions& options_;
    Xoshiro256& rng_;
    double rate_;
    double time_ = 0.0;
    std::uint64_t jumps_ = 0;
    ReplicaResult result_;
};

void run_jump_engine(const ChainParams& p, Xoshiro256& rng, ReplicaRecorder& rec) {
    const double cells = static_cast<double>(p.cells());
    State s{1, 0};
    // (1, 0) can only move up, with probability 1/n per contact.
    rec.elapse(geometric_trials(rng, 1.0 / static_cast<double>(p.n)));
    s.b = 1;
    rec.moved(s, true);
    while (!is_absorbing(p, s)) {
        const std::int64_t w_right = s.b * (p.n - s.a);
        const std::int64_t w_up = (p.m - s.b) * s.a;
        const std::int64_t w_leave = w_right + w_up;
        rec.elapse(geometric_trials(rng, static_cast<double>(w_leave) / cells));
        const bool up = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(w_leave))) >= w_right;
        if (up) {
            ++s.b;
        } else {
            ++s.a;
        }
        rec.moved(s, up);
    }
}

void run_node_engine(const ChainParams& p, Xoshiro256& rng, ReplicaRecorder& rec) {
    std::vector<char> static_informed(static_cast<std::size_t>(p.n), 0);
    std::vector<char> mobile_informed(static_cast<std::size_t>(p.m), 0);
    static_informed[0] = 1;
    State s{1, 0};
    while (!is_absorbing(p, s)) {
        const auto i = uniform_below(rng, static_cast<std::uint64_t>(p.n));
        const auto j = uniform_below(rng, static_cast<std::uint64_t>(p.m));
        rec.elapse_one();
        char& st = static_informed[i];
        char& mo = mobile_informed[j];
        if (st == mo) continue;
        const bool up = st != 0;
        st = mo = 1;
        if (up) {
            ++s.b;
        } else {
            ++s.a;
        }
        rec.moved(s, up);
    }
}

std::size_t trajectory_bytes_estimate(const SimConfig& config, std::int64_t stride) {
    const auto& p = config.params;
    const auto per_path = static_cast<std::size_t>((p.n + p.m) / stride + 3);
    return per_path * sizeof(TrajectoryPoint) * static_cast<std::size_t>(config.replicas);
}

} // namespace

Clock Clock::poisson(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::domain_error("poisson clock needs a positive finite lambda");
    }
    return {ClockMode::poisson, lambda};
}

std::int64_t default_trajectory_stride(const ChainParams& params) {
    if (params.n <= 1000) return 1;
    return (params.n + params.m + 1999) / 2000;
}

ReplicaResult run_replica(const ChainParams& params, std::uint64_t seed, const Clock& clock,
                          const ReplicaOptions& options) {
    if (options.trajectory_stride < 1) throw std::domain_error("trajectory stride must be >= 1");
    if (clock.mode == ClockMode::poisson) (void)Clock::poisson(clock.lambda);
    Xoshiro256 rng(seed);
    ReplicaRecorder rec(params, clock, options, rng);
    if (options.engine == Engine::jump) {
        run_jump_engine(params, rng, rec);
    } else {
        run_node_engine(params, rng, rec);
    }
    return rec.finish();
}

void validate(const SimConfig& config) {
    if (config.replicas < 1) throw std::domain_error("replicas must be >= 1");
    if (config.clock.mode == ClockMode::poisson) (void)Clock::poisson(config.clock.lambda);
    if (config.trajectory_stride < 0) throw std::domain_error("trajectory stride must be >= 1");
    if (config.params.m >= 2 &&
        (config.histogram_phase < 1 || config.histogram_phase > config.params.m - 1)) {
        throw std::domain_error("histogram phase outside [1, m - 1]");
    }
}

SampleSummary summarize(const std::vector<double>& values) {
    SampleSummary out;
    if (values.empty()) return out;
    const auto count = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / count;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.variance = ss / (count - 1.0);
    }
    out.standard_error = std::sqrt(out.variance / count);

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    auto rank = [&](double q) {
        auto idx = static_cast<std::int64_t>(std::ceil(q * count)) - 1;
        idx = std::clamp<std::int64_t>(idx, 0, static_cast<std::int64_t>(sorted.size()) - 1);
        return sorted[static_cast<std::size_t>(idx)];
    };
    out.quantiles = {rank(0.01), rank(0.25), rank(0.50), rank(0.75), rank(0.99)};
    return out;
}

BatchResult run_batch(const SimConfig& config) {
    validate(config);
    const auto& params = config.params;
    const std::int64_t stride =
        config.trajectory_stride == 0 ? default_trajectory_stride(params) : config.trajectory_stride;

    // steps, phase-1 steps, completion time and tallied boundary per replica
    constexpr std::size_t kRecordBytes = 4 * sizeof(double);
    std::size_t need = kRecordBytes * static_cast<std::size_t>(config.replicas);
    if (config.record_trajectories) need += trajectory_bytes_estimate(config, stride);
    if (need > config.memory_cap_bytes) {
        throw CapacityError("batch needs about " + std::to_string(need) + " bytes, cap is " +
                            std::to_string(config.memory_cap_bytes));
    }

    const auto count = static_cast<std::size_t>(config.replicas);
    std::vector<double> steps(count);
    std::vector<double> phase1(count);
    std::vector<double> times(count);
    std::vector<std::int64_t> boundary(count, 0);
    std::vector<Trajectory> paths(config.record_trajectories ? count : 0);

    const bool tally = params.m >= 2;
    ReplicaOptions options;
    options.engine = config.engine;
    options.record_trajectory = config.record_trajectories;
    options.trajectory_stride = stride;

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto r = run_replica(params, replica_seed(config.master_seed, i), config.clock, options);
            steps[i] = static_cast<double>(r.steps);
            phase1[i] = static_cast<double>(r.phase1_steps);
            times[i] = r.completion_time;
            if (tally) boundary[i] = r.boundary_static_counts[static_cast<std::size_t>(config.histogram_phase)];
            if (config.record_trajectories) paths[i] = std::move(r.trajectory);
        }
    };

    unsigned threads = config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                           : config.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        work(0, count);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        const std::size_t chunk = (count + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = std::min(count, t * chunk);
            const std::size_t end = std::min(count, begin + chunk);
            pool.emplace_back([&, t, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    BatchResult out;
    auto& summary = out.summary;
    summary.replica_count = config.replicas;
    summary.steps = summarize(steps);
    summary.phase1_steps = summarize(phase1);
    if (config.clock.mode == ClockMode::poisson) summary.completion_time = summarize(times);
    if (tally) {
        summary.histogram_phase = config.histogram_phase;
        summary.boundary_histogram.assign(static_cast<std::size_t>(params.n), 0);
        for (auto a : boundary) ++summary.boundary_histogram[static_cast<std::size_t>(a - 1)];
    }
    out.trajectories = std::move(paths);
    return out;
}

std::vector<ProportionPath> normalized_trajectories(const std::vector<Trajectory>& bundle,
                                                    const ChainParams& params,
                                                    const Clock& clock) {
    const double scale = clock.mode == ClockMode::poisson ? clock.lambda
                                                          : 1.0 / static_cast<double>(params.m);
    const double n = static_cast<double>(params.n);
    const double m = static_cast<double>(params.m);
    std::vector<ProportionPath> out;
    out.reserve(bundle.size());
    for (const auto& path : bundle) {
        ProportionPath mapped;
        mapped.reserve(path.size());
        for (const auto& pt : path) {
            mapped.push_back({pt.time * scale, static_cast<double>(pt.a) / n,
                              static_cast<double>(pt.b) / m});
        }
        out.push_back(std::move(mapped));
    }
    return out;
}

} // namespace pushpull
