#pragma once

// Scalar formulas for the push-pull chain: harmonic numbers, the birthday and
// coupon-collector expectations, exact series for two and three mobile nodes,
// their asymptotic expansions, the square-chain bounds and the Poisson-clock
// model. All functions are pure.

#include <cstdint>
#include <string>
#include <vector>

namespace pushpull {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Direct summation is used up to this index, the asymptotic expansion beyond.
inline constexpr std::int64_t kHarmonicSummationLimit = 1'000'000;

struct AsymptoticEstimate {
    double value = 0.0;
    std::string neglected_order; ///< order of the dropped remainder, e.g. "n^(-4/3)"
};

struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
};

/// An identity evaluated two ways: the form as originally printed and the
/// re-derived form that matches the exact chain.
struct RelationForms {
    double corrected = 0.0;
    double printed = 0.0;
};

double harmonic(std::int64_t k);
/// H_k summed directly (smallest terms first), regardless of k.
double harmonic_by_summation(std::int64_t k);
/// ln k + gamma + 1/(2k) - 1/(12k^2); requires k >= 1.
double harmonic_by_expansion(std::int64_t k);

/// Probability that the 1 -> 2 boundary of a two-mobile chain falls at a.
double p_a_closed(std::int64_t n, std::int64_t a);
/// p_a for a = 1..n (index a - 1), built with one running product.
std::vector<double> p_a_table(std::int64_t n);

/// Probability that a three-mobile chain crosses 1 -> 2 at a and 2 -> 3 at b.
double p_ab_closed(std::int64_t n, std::int64_t a, std::int64_t b);

double birthday_expectation_exact(std::int64_t n);
AsymptoticEstimate birthday_expectation_asymptotic(std::int64_t n);

double coupon_expectation(std::int64_t n);

/// n!/n^n as a running product of k/n.
double factorial_ratio(std::int64_t n);

double t2_exact_series(std::int64_t n);
AsymptoticEstimate t2_asymptotic(std::int64_t n);
RelationForms t2_relation(std::int64_t n);

double t3_exact_series(std::int64_t n);
/// (2^(n+3) - 1) / (3 binom(2n, n)), evaluated in log space.
double t3_relation_term(std::int64_t n);
/// Relation of E[T] (three mobile) with F, C and the boundary means. Uses the
/// exact joint boundary law from the chain module, so cost is O(n^2).
RelationForms t3_relation(std::int64_t n);
AsymptoticEstimate t3_asymptotic(std::int64_t n);

/// Bounds on E[T] for n static and n mobile nodes without their O(1) terms.
/// Requires n >= 2.
BoundPair tnn_bounds(std::int64_t n);

/// Mean completion time when each mobile node wakes at Poisson rate lambda.
/// Throws std::domain_error for lambda <= 0.
double distributed_expectation(std::int64_t n, std::int64_t m, double lambda);

} // namespace pushpull
