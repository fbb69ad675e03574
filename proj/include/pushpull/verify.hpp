#pragma once

// Numerical checks of the exact, asymptotic and mean-field results, grouped
// into suites that the `verify` command runs and reports on.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pushpull {

enum class Suite { t2, t3, nn, fluid, poisson, all };

/// Throws std::invalid_argument for an unknown name.
Suite parse_suite(const std::string& name);
std::string to_string(Suite suite);

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;  ///< measured discrepancy (or statistic)
    double tolerance = 0.0; ///< threshold the residual was held to
    std::string detail;     ///< free-form context, e.g. the worst n
    /// Informational rows document a known discrepancy and never fail.
    bool informational = false;
};

struct VerifyOptions {
    std::optional<std::int64_t> n_max; ///< per-suite default when empty
    std::uint64_t seed = 20240229;
    std::uint64_t replicas = 2000; ///< Monte Carlo replicas for the poisson suite
    double bound_slack = 5.0;      ///< additive slack for the square-chain bounds
};

std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace pushpull
