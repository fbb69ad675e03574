#pragma once

// Deterministic random streams. Distributions are implemented here instead of
// taken from <random> so a seed reproduces the same draws with any standard
// library.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace pushpull {

/// One step of splitmix64: advances `state` and returns a mixed 64-bit word.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of replica `index` under `master_seed`:
///   s = master_seed; w1 = splitmix64(s); s = w1 ^ index; return splitmix64(s).
constexpr std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = master_seed;
    const std::uint64_t w1 = splitmix64(s);
    s = w1 ^ index;
    return splitmix64(s);
}

/// xoshiro256** with its state expanded from a 64-bit seed by splitmix64.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed) {
        for (auto& word : state_) word = splitmix64(seed);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

/// Uniform on (0, 1], 53 random bits.
inline double uniform_open_closed(Xoshiro256& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

__extension__ using uint128 = unsigned __int128;

/// Uniform integer in [0, bound), bound >= 1 (Lemire's multiply-and-reject).
inline std::uint64_t uniform_below(Xoshiro256& rng, std::uint64_t bound) {
    uint128 product = static_cast<uint128>(rng()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<uint128>(rng()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

/// Number of Bernoulli(p) trials up to and including the first success, p in (0, 1].
inline std::uint64_t geometric_trials(Xoshiro256& rng, double p) {
    if (p >= 1.0) return 1;
    const double u = uniform_open_closed(rng);
    return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
}

inline double standard_exponential(Xoshiro256& rng) { return -std::log(uniform_open_closed(rng)); }

/// Standard normal by the polar method.
inline double standard_normal(Xoshiro256& rng) {
    for (;;) {
        const double u = 2.0 * uniform_open_closed(rng) - 1.0;
        const double v = 2.0 * uniform_open_closed(rng) - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

/// Gamma(shape, 1) for integer shape >= 1: the sum of `shape` unit exponentials.
inline double gamma_integer_shape(Xoshiro256& rng, std::uint64_t shape) {
    if (shape <= 8) {
        double acc = 0.0;
        for (std::uint64_t i = 0; i < shape; ++i) acc += standard_exponential(rng);
        return acc;
    }
    // Marsaglia-Tsang squeeze for shape >= 1.
    const double d = static_cast<double>(shape) - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open_closed(rng);
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

} // namespace pushpull
