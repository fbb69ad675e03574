#include "pushpull/closed_form.hpp"

#include "pushpull/chain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pushpull {

namespace {

void require_positive(std::int64_t n, const char* what) {
    if (n < 1) throw std::domain_error(std::string(what) + ": n must be >= 1, got " + std::to_string(n));
}

// h[k] = H_k for k = 0..n.
std::vector<double> harmonic_prefix(std::int64_t n) {
    std::vector<double> h(static_cast<std::size_t>(n + 1), 0.0);
    for (std::int64_t k = 1; k <= n; ++k)
        h[static_cast<std::size_t>(k)] = h[static_cast<std::size_t>(k - 1)] + 1.0 / static_cast<double>(k);
    return h;
}

} // namespace

double harmonic_by_summation(std::int64_t k) {
    if (k < 0) throw std::domain_error("harmonic: k must be >= 0");
    double acc = 0.0;
    for (std::int64_t i = k; i >= 1; --i) acc += 1.0 / static_cast<double>(i);
    return acc;
}

double harmonic_by_expansion(std::int64_t k) {
    if (k < 1) throw std::domain_error("harmonic_by_expansion: k must be >= 1");
    const double x = static_cast<double>(k);
    return std::log(x) + kEulerGamma + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x);
}

double harmonic(std::int64_t k) {
    return k <= kHarmonicSummationLimit ? harmonic_by_summation(k) : harmonic_by_expansion(k);
}

double p_a_closed(std::int64_t n, std::int64_t a) {
    require_positive(n, "p_a_closed");
    if (a < 1 || a > n) throw std::domain_error("p_a_closed: a outside [1, n]");
    const double nn = static_cast<double>(n);
    double prod = 1.0;
    for (std::int64_t k = 1; k < a && prod > 0.0; ++k) prod *= 1.0 - static_cast<double>(k) / nn;
    return static_cast<double>(a) / nn * prod;
}

std::vector<double> p_a_table(std::int64_t n) {
    require_positive(n, "p_a_table");
    const double nn = static_cast<double>(n);
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    double prod = 1.0; // prod_{k < a} (1 - k/n)
    for (std::int64_t a = 1; a <= n; ++a) {
        p[static_cast<std::size_t>(a - 1)] = static_cast<double>(a) / nn * prod;
        prod *= 1.0 - static_cast<double>(a) / nn;
    }
    return p;
}

double p_ab_closed(std::int64_t n, std::int64_t a, std::int64_t b) {
    require_positive(n, "p_ab_closed");
    if (a < 1 || a > b || b > n) throw std::domain_error("p_ab_closed: need 1 <= a <= b <= n");
    const double nn = static_cast<double>(n);
    const double aa = static_cast<double>(a);
    const double bb = static_cast<double>(b);
    double p = 2.0 * aa / (nn + aa) * (bb / (2.0 * nn - bb));
    for (std::int64_t k = 1; k < a; ++k) {
        const double kk = static_cast<double>(k);
        p *= (nn - kk) / (nn + kk);
    }
    for (std::int64_t k = a; k < b; ++k) {
        const double kk = static_cast<double>(k);
        p *= 2.0 * (nn - kk) / (2.0 * nn - kk);
    }
    return p;
}

double birthday_expectation_exact(std::int64_t n) {
    require_positive(n, "birthday_expectation_exact");
    const double nn = static_cast<double>(n);
    double sum = 0.0;
    double prod = 1.0; // prod_{i < k} (1 - i/n)
    for (std::int64_t k = 1; k <= n && prod > 0.0; ++k) {
        sum += prod;
        prod *= 1.0 - static_cast<double>(k) / nn;
    }
    return 1.0 + sum;
}

AsymptoticEstimate birthday_expectation_asymptotic(std::int64_t n) {
    require_positive(n, "birthday_expectation_asymptotic");
    const double nn = static_cast<double>(n);
    const double pi = std::numbers::pi;
    const double value = std::sqrt(pi * nn / 2.0) + 2.0 / 3.0 +
                         std::sqrt(pi / (2.0 * nn)) / 12.0 - 4.0 / (135.0 * nn);
    return {value, "n^(-3/2)"};
}

double coupon_expectation(std::int64_t n) {
    require_positive(n, "coupon_expectation");
    return static_cast<double>(n) * harmonic(n);
}

double factorial_ratio(std::int64_t n) {
    require_positive(n, "factorial_ratio");
    const double nn = static_cast<double>(n);
    double prod = 1.0;
    for (std::int64_t k = 1; k <= n && prod > 0.0; ++k) prod *= static_cast<double>(k) / nn;
    return prod;
}

double t2_exact_series(std::int64_t n) {
    require_positive(n, "t2_exact_series");
    const auto p = p_a_table(n);
    const auto h = harmonic_prefix(n);
    const double nn = static_cast<double>(n);
    double first_moment = 0.0;
    double tail = 0.0;
    for (std::int64_t a = 1; a <= n; ++a) {
        const double pa = p[static_cast<std::size_t>(a - 1)];
        first_moment += static_cast<double>(a) * pa;
        tail += pa * h[static_cast<std::size_t>(n - a)];
    }
    return nn + 2.0 * first_moment + nn * tail;
}

AsymptoticEstimate t2_asymptotic(std::int64_t n) {
    require_positive(n, "t2_asymptotic");
    const double nn = static_cast<double>(n);
    const double pi = std::numbers::pi;
    const double value = nn * harmonic(n) + nn + std::sqrt(pi * nn / 2.0) - 4.0 / 3.0 +
                         std::sqrt(pi / (2.0 * nn)) / 12.0 - 4.0 / (135.0 * nn);
    return {value, "n^(-4/3)"};
}

RelationForms t2_relation(std::int64_t n) {
    require_positive(n, "t2_relation");
    const double phase1 = static_cast<double>(n);
    const double birthday = birthday_expectation_exact(n);
    const double tail = factorial_ratio(n);
    RelationForms r;
    r.printed = phase1 + birthday - 1.0 + static_cast<double>(n - 1) * harmonic(n - 1) + tail;
    r.corrected = phase1 + birthday - 2.0 + coupon_expectation(n) + tail;
    return r;
}

double t3_exact_series(std::int64_t n) {
    require_positive(n, "t3_exact_series");
    const double nn = static_cast<double>(n);
    const auto h = harmonic_prefix(n);
    // row1[a] = sum_{k=1..a} 3n/(n+k); row2[j] = sum_{k=1..j} 3n/(2n-k), row2[0] = 0.
    std::vector<double> row1(static_cast<std::size_t>(n + 1), 0.0);
    std::vector<double> row2(static_cast<std::size_t>(n + 1), 0.0);
    for (std::int64_t k = 1; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        row1[static_cast<std::size_t>(k)] = row1[static_cast<std::size_t>(k - 1)] + 3.0 * nn / (nn + kk);
        row2[static_cast<std::size_t>(k)] = row2[static_cast<std::size_t>(k - 1)] + 3.0 * nn / (2.0 * nn - kk);
    }
    double total = 0.0;
    double lead = 1.0; // prod_{k < a} (n-k)/(n+k)
    for (std::int64_t a = 1; a <= n && lead > 0.0; ++a) {
        const double aa = static_cast<double>(a);
        const double head = lead * 2.0 * aa / (nn + aa);
        double run = 1.0; // prod_{k=a}^{b-1} 2(n-k)/(2n-k)
        for (std::int64_t b = a; b <= n && run > 0.0; ++b) {
            const double bb = static_cast<double>(b);
            const double pab = head * run * bb / (2.0 * nn - bb);
            const double cost = row1[static_cast<std::size_t>(a)] +
                                (row2[static_cast<std::size_t>(b)] - row2[static_cast<std::size_t>(a - 1)]) +
                                nn * h[static_cast<std::size_t>(n - b)];
            total += pab * cost;
            run *= 2.0 * (nn - bb) / (2.0 * nn - bb);
        }
        lead *= (nn - aa) / (nn + aa);
    }
    return nn + total;
}

double t3_relation_term(std::int64_t n) {
    require_positive(n, "t3_relation_term");
    const double nn = static_cast<double>(n);
    const double log_num = (nn + 3.0) * std::numbers::ln2 + std::log1p(-std::exp2(-(nn + 3.0)));
    const double log_binom = std::lgamma(2.0 * nn + 1.0) - 2.0 * std::lgamma(nn + 1.0);
    return std::exp(log_num - std::log(3.0) - log_binom);
}

RelationForms t3_relation(std::int64_t n) {
    require_positive(n, "t3_relation");
    const auto joint = joint_boundary_distribution(ChainParams(n, 3));
    const double p1 = joint.first_marginal().mean();
    const double p2 = joint.second_marginal().mean();
    const double shared = static_cast<double>(n) + 1.5 * p1 + 0.5 * p2 + t3_relation_term(n);
    RelationForms r;
    r.printed = shared + static_cast<double>(n - 1) * harmonic(n - 1);
    r.corrected = shared + coupon_expectation(n) - 1.0;
    return r;
}

AsymptoticEstimate t3_asymptotic(std::int64_t n) {
    require_positive(n, "t3_asymptotic");
    const double nn = static_cast<double>(n);
    const double pi = std::numbers::pi;
    const double value = nn * harmonic(n) + nn + 4.0 / 3.0 * std::sqrt(pi * nn) - 5.0 / 3.0 +
                         std::sqrt(pi / nn) / 6.0 + std::sqrt(pi / (nn * nn * nn)) / 96.0;
    return {value, "n^(-5/2)"};
}

BoundPair tnn_bounds(std::int64_t n) {
    if (n < 2) throw std::domain_error("tnn_bounds: n must be >= 2, got " + std::to_string(n));
    const double nn = static_cast<double>(n);
    const double base = 2.0 * nn * harmonic(n);
    return {base + 2.0 * std::log(nn), base + std::log(4.0) * nn};
}

double distributed_expectation(std::int64_t n, std::int64_t m, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::domain_error("distributed_expectation: lambda must be a positive finite rate");
    }
    const ChainParams params(n, m);
    return expected_total_time(params) / (static_cast<double>(m) * lambda);
}

} // namespace pushpull
