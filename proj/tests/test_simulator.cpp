#include "oracles.hpp"

#include "pushpull/chain.hpp"
#include "pushpull/closed_form.hpp"
#include "pushpull/errors.hpp"
#include "pushpull/rng.hpp"
#include "pushpull/simulator.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace pushpull;

namespace {

double z_score(const SampleSummary& s, double want) { return std::abs(s.mean - want) / s.standard_error; }

} // namespace

TEST_CASE("splitmix64 reference output") {
    std::uint64_t s = 0;
    CHECK(splitmix64(s) == 0xE220A8397B1DCDAFULL);
    CHECK(replica_seed(1, 0) != replica_seed(1, 1));
    CHECK(replica_seed(1, 5) == replica_seed(1, 5));
}

TEST_CASE("random variates have the right first two moments") {
    Xoshiro256 rng(99);
    const int N = 400000;
    double e1 = 0, e2 = 0, g1 = 0, g2 = 0, q1 = 0, n1 = 0, n2 = 0;
    std::vector<int> bins(7, 0);
    for (int i = 0; i < N; ++i) {
        const double e = standard_exponential(rng);
        e1 += e;
        e2 += e * e;
        const double g = gamma_integer_shape(rng, 20);
        g1 += g;
        g2 += g * g;
        q1 += static_cast<double>(geometric_trials(rng, 0.2));
        const double z = standard_normal(rng);
        n1 += z;
        n2 += z * z;
        bins[uniform_below(rng, 7)] += 1;
    }
    CHECK(e1 / N == doctest::Approx(1.0).epsilon(0.01));
    CHECK(e2 / N == doctest::Approx(2.0).epsilon(0.02));
    CHECK(g1 / N == doctest::Approx(20.0).epsilon(0.005));
    CHECK(g2 / N - (g1 / N) * (g1 / N) == doctest::Approx(20.0).epsilon(0.02));
    CHECK(q1 / N == doctest::Approx(5.0).epsilon(0.01));
    CHECK(std::abs(n1 / N) < 0.01);
    CHECK(n2 / N == doctest::Approx(1.0).epsilon(0.01));
    for (int c : bins) CHECK(static_cast<double>(c) / N == doctest::Approx(1.0 / 7.0).epsilon(0.02));
    CHECK(geometric_trials(rng, 1.0) == 1);
}

TEST_CASE("single replica invariants") {
    CHECK(run_replica({1, 1}, 5, Clock::rounds()).steps == 1);

    oracle::Gen g(21);
    for (int i = 0; i < 200; ++i) {
        const ChainParams p{g.in(1, 60), g.in(1, 60)};
        ReplicaOptions o;
        o.engine = (i % 2) ? Engine::jump : Engine::node_level;
        o.record_trajectory = true;
        const auto r = run_replica(p, static_cast<std::uint64_t>(i), Clock::rounds(), o);
        CHECK(r.steps >= static_cast<std::uint64_t>(p.n + p.m - 1));
        CHECK(r.phase1_steps >= 1);
        CHECK(r.phase1_steps <= r.steps);
        CHECK(r.completion_time == static_cast<double>(r.steps));
        REQUIRE(r.trajectory.size() == static_cast<std::size_t>(p.n + p.m));
        CHECK(r.trajectory.front().a == 1);
        CHECK(r.trajectory.front().b == 0);
        CHECK(r.trajectory.back().a == p.n);
        CHECK(r.trajectory.back().b == p.m);
        CHECK(r.boundary_static_counts.size() == static_cast<std::size_t>(p.m));
        for (std::size_t k = 1; k < r.trajectory.size(); ++k) {
            const auto& a = r.trajectory[k - 1];
            const auto& b = r.trajectory[k];
            CHECK((b.a - a.a) + (b.b - a.b) == 1);
            CHECK(b.time > a.time);
        }
        for (std::size_t k = 1; k < r.boundary_static_counts.size(); ++k)
            CHECK(r.boundary_static_counts[k] >= r.boundary_static_counts[k - 1]);
    }
}

TEST_CASE("trajectory stride keeps endpoints") {
    ReplicaOptions o;
    o.record_trajectory = true;
    o.trajectory_stride = 7;
    const auto r = run_replica({50, 40}, 3, Clock::rounds(), o);
    CHECK(r.trajectory.front().a == 1);
    CHECK(r.trajectory.back().a == 50);
    CHECK(r.trajectory.back().b == 40);
    CHECK(r.trajectory.size() <= 89 / 7 + 3);
    o.trajectory_stride = 0;
    CHECK_THROWS_AS(run_replica({5, 5}, 1, Clock::rounds(), o), std::domain_error);
}

TEST_CASE("batches are deterministic and thread independent") {
    SimConfig c;
    c.params = {40, 7};
    c.replicas = 3000;
    c.master_seed = 77;
    c.threads = 1;
    const auto one = run_batch(c).summary;
    c.threads = 4;
    const auto four = run_batch(c).summary;
    CHECK(one.steps.mean == four.steps.mean);
    CHECK(one.steps.variance == four.steps.variance);
    CHECK(one.steps.quantiles.q99 == four.steps.quantiles.q99);
    CHECK(one.boundary_histogram == four.boundary_histogram);
    c.master_seed = 78;
    CHECK(run_batch(c).summary.steps.mean != one.steps.mean);
}

TEST_CASE("Monte Carlo mean matches the exact chain") {
    for (const ChainParams p : {ChainParams{2, 1}, ChainParams{30, 2}, ChainParams{20, 20}, ChainParams{7, 45}}) {
        SimConfig c;
        c.params = p;
        c.replicas = 40000;
        c.master_seed = 1234;
        const auto s = run_batch(c).summary;
        CHECK(z_score(s.steps, static_cast<double>(oracle::total_time_forward(p.n, p.m))) < 4.0);
        CHECK(z_score(s.phase1_steps, static_cast<double>(p.n)) < 4.0);
    }
}

TEST_CASE("jump and node engines sample the same law") {
    SimConfig c;
    c.params = {25, 9};
    c.replicas = 20000;
    c.master_seed = 5;
    c.engine = Engine::jump;
    const auto jump = run_batch(c).summary.steps;
    c.engine = Engine::node_level;
    c.master_seed = 6;
    const auto node = run_batch(c).summary.steps;
    const double se = std::hypot(jump.standard_error, node.standard_error);
    CHECK(std::abs(jump.mean - node.mean) / se < 4.0);
    CHECK(node.variance == doctest::Approx(jump.variance).epsilon(0.06));
}

TEST_CASE("boundary histogram follows the closed-form law") {
    SimConfig c;
    c.params = {30, 2};
    c.replicas = 200000;
    c.master_seed = 8;
    const auto s = run_batch(c).summary;
    REQUIRE(s.boundary_histogram.size() == 30);
    double tv = 0.0;
    for (std::int64_t a = 1; a <= 30; ++a) {
        long double p = 1.0L;
        for (std::int64_t k = 1; k < a; ++k) p *= (30.0L - k) / 30.0L;
        p *= a / 30.0L;
        tv += std::abs(static_cast<double>(s.boundary_histogram[a - 1]) / 2e5 - static_cast<double>(p));
    }
    CHECK(0.5 * tv < 0.01);
}

TEST_CASE("poisson clock") {
    CHECK_THROWS_AS(Clock::poisson(0.0), std::domain_error);
    CHECK_THROWS_AS(Clock::poisson(-2.0), std::domain_error);
    SimConfig c;
    c.params = {40, 40};
    c.replicas = 20000;
    c.master_seed = 3;
    c.clock = Clock::poisson(2.0);
    const auto s = run_batch(c).summary;
    REQUIRE(s.completion_time.has_value());
    CHECK(z_score(*s.completion_time, distributed_expectation(40, 40, 2.0)) < 4.0);
    // the contact sequence does not depend on the clock
    CHECK(z_score(s.steps, expected_total_time({40, 40})) < 4.0);

    c.engine = Engine::node_level;
    c.replicas = 5000;
    const auto node = run_batch(c).summary;
    CHECK(z_score(*node.completion_time, distributed_expectation(40, 40, 2.0)) < 4.0);
}

TEST_CASE("summaries") {
    const auto s = summarize({1, 2, 3, 4, 5});
    CHECK(s.mean == 3.0);
    CHECK(s.variance == 2.5);
    CHECK(s.standard_error == doctest::Approx(std::sqrt(0.5)));
    CHECK(s.quantiles.q50 == 3.0);
    CHECK(s.quantiles.q01 == 1.0);
    CHECK(s.quantiles.q99 == 5.0);
}

TEST_CASE("configuration errors") {
    SimConfig c;
    c.params = {10, 10};
    c.replicas = 0;
    CHECK_THROWS_AS(run_batch(c), std::domain_error);
    c.replicas = 10;
    c.histogram_phase = 10;
    CHECK_THROWS_AS(run_batch(c), std::domain_error);
    c.histogram_phase = 1;
    c.record_trajectories = true;
    c.memory_cap_bytes = 1000;
    CHECK_THROWS_AS(run_batch(c), CapacityError);
}

TEST_CASE("normalized trajectories") {
    ReplicaOptions o;
    o.record_trajectory = true;
    const ChainParams p{8, 4};
    const auto r = run_replica(p, 9, Clock::rounds(), o);
    const auto paths = normalized_trajectories({r.trajectory}, p, Clock::rounds());
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].front().x == doctest::Approx(1.0 / 8.0));
    CHECK(paths[0].front().y == 0.0);
    CHECK(paths[0].back().x == 1.0);
    CHECK(paths[0].back().y == 1.0);
    CHECK(paths[0].back().t == doctest::Approx(r.completion_time / 4.0));
}
