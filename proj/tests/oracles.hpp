#pragma once

// Test-side reference computations. None of these call into the library.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// E[T] as sum over transient states of P(visit) * mean sojourn, with the visit
// law propagated forward along the jump chain. Long double throughout.
inline long double total_time_forward(std::int64_t n, std::int64_t m) {
    if (n == 1 && m == 1) return 1.0L;
    const long double nm = static_cast<long double>(n * m);
    // visit[a][b], a in [1,n], b in [0,m]
    std::vector<std::vector<long double>> visit(n + 1, std::vector<long double>(m + 1, 0.0L));
    visit[1][0] = 1.0L;
    long double total = 0.0L;
    for (std::int64_t s = 1; s <= n + m; ++s) {
        for (std::int64_t a = 1; a <= n; ++a) {
            const std::int64_t b = s - a;
            if (b < 0 || b > m) continue;
            if (a == n && b == m) continue;
            const long double wr = static_cast<long double>(b * (n - a));
            const long double wu = static_cast<long double>((m - b) * a);
            const long double p = visit[a][b];
            total += p * nm / (wr + wu);
            if (a < n) visit[a + 1][b] += p * wr / (wr + wu);
            if (b < m) visit[a][b + 1] += p * wu / (wr + wu);
        }
    }
    return total;
}

inline long double harmonic(std::int64_t k) {
    long double h = 0.0L;
    for (std::int64_t i = k; i >= 1; --i) h += 1.0L / static_cast<long double>(i);
    return h;
}

// Hand-rolled generator for property tests: uniform integers in [lo, hi].
struct Gen {
    std::mt19937_64 eng;
    explicit Gen(std::uint64_t seed) : eng(seed) {}
    std::int64_t in(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng);
    }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
};

inline double rel(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

} // namespace oracle
