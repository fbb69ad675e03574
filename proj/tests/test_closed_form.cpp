#include "oracles.hpp"

#include "pushpull/chain.hpp"
#include "pushpull/closed_form.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace pushpull;

namespace {

// P(second mobile informed while a statics are informed), walked step by step.
long double p_a_walk(std::int64_t n, std::int64_t a) {
    long double p = 1.0L;
    for (std::int64_t k = 1; k < a; ++k) p *= static_cast<long double>(n - k) / n;
    return p * static_cast<long double>(a) / n;
}

long double birthday_walk(std::int64_t n) {
    long double e = 0.0L, alive = 1.0L;
    for (std::int64_t k = 0; k <= n; ++k) {
        e += alive;
        alive *= 1.0L - static_cast<long double>(k) / n;
    }
    return e;
}

} // namespace

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(1) == 1.0);
    CHECK(harmonic(2) == 1.5);
    CHECK(harmonic(0) == 0.0);
    CHECK(harmonic(10) == doctest::Approx(7381.0 / 2520.0).epsilon(1e-15));
    for (std::int64_t k : {100, 1000, 100000})
        CHECK(harmonic(k) == doctest::Approx(static_cast<double>(oracle::harmonic(k))).epsilon(1e-14));
    // the two evaluations meet at the switch-over
    const auto k = kHarmonicSummationLimit;
    CHECK(std::abs(harmonic_by_summation(k) - harmonic_by_expansion(k)) < 1e-13);
    CHECK(harmonic(k + 1) > harmonic(k));
}

TEST_CASE("two-mobile boundary law") {
    CHECK(p_a_closed(7, 1) == doctest::Approx(1.0 / 7.0));
    CHECK(p_a_closed(2, 1) == doctest::Approx(0.5));
    CHECK(p_a_closed(2, 2) == doctest::Approx(0.5));
    for (std::int64_t n : {3, 17, 250}) {
        const auto table = p_a_table(n);
        long double sum = 0.0L;
        for (std::int64_t a = 1; a <= n; ++a) {
            const double want = static_cast<double>(p_a_walk(n, a));
            CHECK(p_a_closed(n, a) == doctest::Approx(want).epsilon(1e-12));
            CHECK(table[a - 1] == doctest::Approx(want).epsilon(1e-12));
            sum += table[a - 1];
        }
        CHECK(static_cast<double>(sum) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("three-mobile joint law sums to one") {
    for (std::int64_t n : {1, 2, 5, 40}) {
        long double sum = 0.0L;
        for (std::int64_t a = 1; a <= n; ++a)
            for (std::int64_t b = a; b <= n; ++b) sum += p_ab_closed(n, a, b);
        CHECK(static_cast<double>(sum) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("birthday and coupon collector") {
    CHECK(birthday_expectation_exact(1) == doctest::Approx(2.0));
    CHECK(birthday_expectation_exact(2) == doctest::Approx(2.5));
    for (std::int64_t n : {10, 365, 5000})
        CHECK(birthday_expectation_exact(n) == doctest::Approx(static_cast<double>(birthday_walk(n))).epsilon(1e-12));
    CHECK(std::abs(birthday_expectation_asymptotic(10000).value - birthday_expectation_exact(10000)) < 1e-3);
    CHECK(coupon_expectation(1) == doctest::Approx(1.0));
    CHECK(coupon_expectation(3) == doctest::Approx(5.5));
    CHECK(factorial_ratio(3) == doctest::Approx(6.0 / 27.0));
}

TEST_CASE("two-mobile series") {
    CHECK(t2_exact_series(1) == doctest::Approx(expected_total_time({1, 2})).epsilon(1e-12));
    CHECK(t2_exact_series(2) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(t2_exact_series(3) == doctest::Approx(173.0 / 18.0).epsilon(1e-12));
    CHECK(t2_exact_series(4) == doctest::Approx(655.0 / 48.0).epsilon(1e-12));
    oracle::Gen g(3);
    for (int i = 0; i < 60; ++i) {
        const std::int64_t n = g.in(1, 1500);
        CHECK(oracle::rel(t2_exact_series(n), static_cast<double>(oracle::total_time_forward(n, 2))) < 1e-10);
    }
}

TEST_CASE("two-mobile relation, both forms") {
    const auto r = t2_relation(2);
    CHECK(r.corrected == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(r.printed == doctest::Approx(5.0).epsilon(1e-12));
    for (std::int64_t n : {3, 10, 100, 1000}) {
        const auto f = t2_relation(n);
        const double dp = expected_total_time({n, 2});
        CHECK(oracle::rel(f.corrected, dp) < 1e-10);
        CHECK(dp - f.printed == doctest::Approx(static_cast<double>(oracle::harmonic(n - 1))).epsilon(1e-9));
    }
}

TEST_CASE("three-mobile series and relation") {
    CHECK(t3_exact_series(1) == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(t3_exact_series(2) == doctest::Approx(155.0 / 18.0).epsilon(1e-12));
    CHECK(t3_exact_series(5) == doctest::Approx(7751.0 / 378.0).epsilon(1e-12));
    CHECK(t3_relation_term(1) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(t3_relation_term(2) == doctest::Approx(31.0 / 18.0).epsilon(1e-14));
    oracle::Gen g(9);
    for (int i = 0; i < 30; ++i) {
        const std::int64_t n = g.in(1, 400);
        const double want = static_cast<double>(oracle::total_time_forward(n, 3));
        CHECK(oracle::rel(t3_exact_series(n), want) < 1e-10);
        const auto r = t3_relation(n);
        CHECK(oracle::rel(r.corrected, want) < 1e-10);
        CHECK(want - r.printed == doctest::Approx(static_cast<double>(oracle::harmonic(n - 1))).epsilon(1e-9));
    }
}

TEST_CASE("asymptotic expansions converge") {
    double last = INFINITY;
    for (std::int64_t n = 64; n <= 4096; n *= 2) {
        const double err = std::abs(static_cast<double>(oracle::total_time_forward(n, 2)) - t2_asymptotic(n).value);
        CHECK(err <= last);
        last = err;
    }
    CHECK(last < 1e-2);
    last = INFINITY;
    for (std::int64_t n : {64, 256, 1024}) {
        const double err = std::abs(static_cast<double>(oracle::total_time_forward(n, 3)) - t3_asymptotic(n).value);
        CHECK(err < last);
        last = err;
    }
    CHECK(last < 1e-2);
    CHECK_FALSE(t2_asymptotic(100).neglected_order.empty());
}

TEST_CASE("square-chain bounds") {
    CHECK_THROWS_AS(tnn_bounds(1), std::domain_error);
    for (std::int64_t n : {2, 3, 10, 100, 700}) {
        const auto b = tnn_bounds(n);
        CHECK(b.lower < b.upper);
        const double nn = static_cast<double>(n);
        const double h = static_cast<double>(oracle::harmonic(n));
        CHECK(b.lower == doctest::Approx(2 * nn * h + 2 * std::log(nn)));
        CHECK(b.upper == doctest::Approx(2 * nn * h + std::log(4.0) * nn));
        const double dp = expected_total_time({n, n});
        CHECK(dp >= b.lower - 5.0);
        CHECK(dp <= b.upper + 5.0);
    }
}

TEST_CASE("poisson clock expectation") {
    CHECK(distributed_expectation(2, 2, 1.0) == doctest::Approx(3.0));
    CHECK(distributed_expectation(2, 2, 0.5) == doctest::Approx(6.0));
    oracle::Gen g(4);
    for (int i = 0; i < 50; ++i) {
        const std::int64_t n = g.in(1, 100), m = g.in(1, 100);
        const double lam = g.real(0.1, 10.0);
        CHECK(distributed_expectation(n, m, lam / 2) == doctest::Approx(2 * distributed_expectation(n, m, lam)));
        CHECK(distributed_expectation(n, m, lam) ==
              doctest::Approx(expected_total_time({n, m}) / (static_cast<double>(m) * lam)));
    }
    CHECK_THROWS_AS(distributed_expectation(3, 3, 0.0), std::domain_error);
    CHECK_THROWS_AS(distributed_expectation(3, 3, -1.0), std::domain_error);
}
