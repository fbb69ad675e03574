#include "pushpull/verify.hpp"

#include "pushpull/chain.hpp"
#include "pushpull/closed_form.hpp"
#include "pushpull/fluid.hpp"
#include "pushpull/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pushpull {

namespace {

double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

// Tracks the worst residual seen over a sweep and where it occurred.
struct Worst {
    double value = 0.0;
    std::int64_t at = 0;
    void see(double v, std::int64_t where) {
        if (v > value || std::isnan(v)) {
            value = v;
            at = where;
        }
    }
};

CheckResult bounded(std::string name, double residual, double tol, std::string detail = {}) {
    return {std::move(name), residual <= tol, residual, tol, std::move(detail), false};
}

CheckResult note(std::string name, double residual, std::string detail) {
    return {std::move(name), true, residual, 0.0, std::move(detail), true};
}

std::string at_n(std::int64_t n) { return "worst at n=" + std::to_string(n); }

std::string join(const std::vector<double>& xs) {
    std::ostringstream os;
    os.precision(6);
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
    return os.str();
}

// Number of strict increases along a sequence that should not grow.
double increases(const std::vector<double>& xs) {
    double count = 0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] > xs[i - 1]) count += 1;
    return count;
}

void suite_t2(std::int64_t n_max, std::vector<CheckResult>& out) {
    Worst series, corrected, gap, norm, chain, birthday, coupon;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const double dp = expected_total_time({n, 2});
        const double s = t2_exact_series(n);
        series.see(rel_err(s, dp), n);
        const auto rel = t2_relation(n);
        corrected.see(rel_err(rel.corrected, s), n);
        gap.see(std::abs((s - rel.printed) - harmonic(n - 1)), n);

        const auto p = p_a_table(n);
        double total = 0.0, moment = 0.0;
        for (std::int64_t a = 1; a <= n; ++a) {
            total += p[static_cast<std::size_t>(a - 1)];
            moment += static_cast<double>(a) * p[static_cast<std::size_t>(a - 1)];
        }
        norm.see(std::abs(total - 1.0), n);
        birthday.see(std::abs(1.0 + moment - birthday_expectation_exact(n)), n);

        if (n >= 2) {
            const auto law = phase_boundary_distribution({n, 2}, 1);
            for (std::int64_t a = 1; a <= n; ++a) {
                const double closed = p_a_closed(n, a);
                chain.see(std::abs(closed - law.at(a)) / std::max(closed, 1e-300), n);
            }
        }

        // Two-phase split of the coupon collector.
        double split = p[static_cast<std::size_t>(n - 1)] * static_cast<double>(n);
        const double nn = static_cast<double>(n);
        for (std::int64_t k = 2; k <= n; ++k) {
            split += p[static_cast<std::size_t>(k - 2)] * (static_cast<double>(k) + nn * harmonic(n - k + 1));
        }
        coupon.see(rel_err(split, coupon_expectation(n)), n);
    }
    out.push_back(bounded("t2.series_vs_dp", series.value, 1e-9, at_n(series.at)));
    out.push_back(bounded("t2.relation_corrected_vs_series", corrected.value, 1e-9, at_n(corrected.at)));
    {
        const auto rel = t2_relation(n_max);
        const double s = t2_exact_series(n_max);
        out.push_back(note("t2.relation_printed_residual", s - rel.printed,
                           "n=" + std::to_string(n_max) + ", H_{n-1}=" + std::to_string(harmonic(n_max - 1))));
    }
    out.push_back(bounded("t2.printed_residual_equals_H(n-1)", gap.value, 1e-9, at_n(gap.at)));
    out.push_back(bounded("t2.p_a_normalization", norm.value, 1e-10, at_n(norm.at)));
    out.push_back(bounded("t2.p_a_closed_vs_chain", chain.value, 1e-12, at_n(chain.at)));
    out.push_back(bounded("t2.birthday_identity", birthday.value, 1e-9, at_n(birthday.at)));
    out.push_back(bounded("t2.coupon_two_phase_identity", coupon.value, 1e-9, at_n(coupon.at)));

    std::vector<double> errors;
    for (std::int64_t n = 64; n <= 4096; n *= 2) {
        errors.push_back(std::abs(expected_total_time({n, 2}) - t2_asymptotic(n).value));
    }
    out.push_back(bounded("t2.asymptotic_error_non_increasing", increases(errors), 0.0,
                          "errors over n=64..4096: " + join(errors)));
    out.push_back(bounded("t2.asymptotic_error_at_4096", errors.back(), 1e-2));
}

void suite_t3(std::int64_t n_max, std::vector<CheckResult>& out) {
    Worst series, corrected, gap;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const double dp = expected_total_time({n, 3});
        series.see(rel_err(t3_exact_series(n), dp), n);
        const auto rel = t3_relation(n);
        corrected.see(rel_err(rel.corrected, dp), n);
        gap.see(std::abs((dp - rel.printed) - harmonic(n - 1)), n);
    }
    out.push_back(bounded("t3.series_vs_dp", series.value, 1e-9, at_n(series.at)));
    out.push_back(bounded("t3.relation_corrected_vs_dp", corrected.value, 1e-9, at_n(corrected.at)));
    {
        const auto rel = t3_relation(n_max);
        out.push_back(note("t3.relation_printed_residual", expected_total_time({n_max, 3}) - rel.printed,
                           "n=" + std::to_string(n_max) + ", H_{n-1}=" + std::to_string(harmonic(n_max - 1))));
    }
    out.push_back(bounded("t3.printed_residual_equals_H(n-1)", gap.value, 1e-9, at_n(gap.at)));

    Worst norm, joint;
    std::vector<std::int64_t> sizes;
    for (std::int64_t n = 1; n <= std::min<std::int64_t>(n_max, 40); ++n) sizes.push_back(n);
    if (n_max > 40) sizes.push_back(n_max);
    for (auto n : sizes) {
        double total = 0.0;
        for (std::int64_t a = 1; a <= n; ++a)
            for (std::int64_t b = a; b <= n; ++b) total += p_ab_closed(n, a, b);
        norm.see(std::abs(total - 1.0), n);
    }
    for (std::int64_t n = 1; n <= std::min<std::int64_t>(n_max, 100); ++n) {
        const auto law = joint_boundary_distribution({n, 3});
        for (std::int64_t a = 1; a <= n; ++a)
            for (std::int64_t b = a; b <= n; ++b) {
                const double closed = p_ab_closed(n, a, b);
                joint.see(std::abs(closed - law.at(a, b)) / std::max(closed, 1e-300), n);
            }
    }
    out.push_back(bounded("t3.p_ab_normalization", norm.value, 1e-10, at_n(norm.at)));
    out.push_back(bounded("t3.p_ab_closed_vs_chain", joint.value, 1e-10, at_n(joint.at)));

    std::vector<double> errors;
    for (std::int64_t n : {64, 256, 1024}) {
        errors.push_back(std::abs(expected_total_time({n, 3}) - t3_asymptotic(n).value));
    }
    out.push_back(bounded("t3.asymptotic_error_non_increasing", increases(errors), 0.0,
                          "errors at n=64,256,1024: " + join(errors)));
    out.push_back(bounded("t3.asymptotic_error_at_1024", errors.back(), 1e-2));
}

void suite_nn(std::int64_t n_max, double slack, std::vector<CheckResult>& out) {
    Worst violation, one_mobile;
    // signed: negative while every n is inside the slackened band
    violation.value = -std::numeric_limits<double>::infinity();
    for (std::int64_t n = 2; n <= n_max; ++n) {
        const double dp = expected_total_time({n, n});
        const auto b = tnn_bounds(n);
        violation.see(std::max((b.lower - slack) - dp, dp - (b.upper + slack)), n);
    }
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const double nn = static_cast<double>(n);
        one_mobile.see(rel_err(expected_total_time({n, 1}), nn * harmonic(n - 1) + nn), n);
    }
    out.push_back(bounded("nn.bounds_with_slack", std::max(0.0, violation.value), 0.0,
                          "slack=" + std::to_string(slack) + ", tightest at n=" + std::to_string(violation.at) +
                              " with margin " + std::to_string(-violation.value)));
    {
        const double nn = static_cast<double>(n_max);
        const double upper_gap = expected_total_time({n_max, n_max}) - 2.0 * nn * harmonic(n_max) -
                                 std::log(4.0) * nn;
        out.push_back(note("nn.dp_minus_upper_leading_terms", upper_gap, "n=" + std::to_string(n_max)));
    }
    out.push_back(bounded("nn.one_mobile_closed_form", one_mobile.value, 1e-9, at_n(one_mobile.at)));

    double split_failures = 0;
    const std::int64_t split_max = std::min<std::int64_t>(n_max, 500);
    for (std::int64_t n = 2; n <= split_max; ++n) {
        for (std::int64_t a = 2; a <= 2 * n - 1; ++a) {
            if (!diagonal_extrema({n, n}, a).matches_balanced_split) split_failures += 1;
        }
    }
    out.push_back(bounded("nn.diagonal_extrema_balanced_split", split_failures, 0.0,
                          "n <= " + std::to_string(split_max)));

    Worst stay;
    const ChainParams sq(n_max, n_max);
    for (std::int64_t j = 1; j < n_max; ++j) {
        const double nn = static_cast<double>(n_max);
        const double jj = static_cast<double>(j);
        stay.see(rel_err(expected_stay_rounds(sq, {j, j}), nn * nn / (2.0 * jj * (nn - jj))), j);
    }
    out.push_back(bounded("nn.diagonal_stay_rounds", stay.value, 1e-12, "worst at j=" + std::to_string(stay.at)));

    Worst symmetry;
    const std::int64_t sym_max = std::min<std::int64_t>(n_max, 60);
    for (std::int64_t n = 1; n <= sym_max; ++n)
        for (std::int64_t m = n + 1; m <= sym_max; ++m)
            symmetry.see(rel_err(expected_phase2_time({n, m}), expected_phase2_time({m, n})), n * 1000 + m);
    out.push_back(bounded("nn.phase2_symmetry", symmetry.value, 1e-9, "n, m <= " + std::to_string(sym_max)));
}

void suite_fluid(std::vector<CheckResult>& out) {
    double roundtrip = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double w = -1.0 + 6.0 * static_cast<double>(i) / 999.0;
        roundtrip = std::max(roundtrip, std::abs(lambert_w0(w * std::exp(w)) - w));
    }
    out.push_back(bounded("fluid.lambert_roundtrip", roundtrip, 1e-10, "w in [-1, 5], 1000 points"));

    double ode_gap = 0.0;
    double monotone_breaks = 0;
    std::string worst;
    for (double alpha : {0.1, 1.0, 4.0}) {
        for (double n : {125.0, 250.0, 1000.0}) {
            const FluidParams fp(alpha, n);
            const auto curve = fluid_trajectory(fp, default_fluid_t_max(fp), default_fluid_dt(fp));
            const double gap = ode_closed_form_deviation(curve);
            if (gap > ode_gap) {
                ode_gap = gap;
                worst = "alpha=" + std::to_string(alpha) + ", n=" + std::to_string(static_cast<int>(n));
            }
            for (std::size_t i = 1; i < curve.samples.size(); ++i) {
                if (curve.samples[i].x < curve.samples[i - 1].x || curve.samples[i].y < curve.samples[i - 1].y)
                    monotone_breaks += 1;
            }
        }
    }
    out.push_back(bounded("fluid.ode_vs_closed_form", ode_gap, 1e-6, worst));
    out.push_back(bounded("fluid.ode_monotone", monotone_breaks, 0.0));

    double identity = 0.0;
    for (double n : {125.0, 250.0, 1000.0}) {
        const FluidParams fp(1.0, n);
        for (int i = 0; i <= 1000; ++i) {
            const double x = fp.x0() + (1.0 - fp.x0()) * static_cast<double>(i) / 1000.0;
            identity = std::max(identity, std::abs(fluid_phase_curve(fp, x) - x));
        }
    }
    out.push_back(bounded("fluid.alpha1_identity", identity, 1e-9));

    const FluidParams fp(4.0, 125.0);
    const auto coarse = fluid_trajectory(fp, 2000.0, 0.01);
    const auto fine = fluid_trajectory(fp, 2000.0, 0.005);
    const auto& c = coarse.samples.back();
    const auto& f = fine.samples.back();
    out.push_back(bounded("fluid.rk4_step_halving", std::max(std::abs(c.x - f.x), std::abs(c.y - f.y)), 1e-8,
                          "alpha=4, n=125, t=2000"));
}

void suite_poisson(std::int64_t n_max, const VerifyOptions& options, std::vector<CheckResult>& out) {
    std::vector<double> ratios;
    for (std::int64_t n : {100, 300, 1000}) {
        if (n > n_max) break;
        SimConfig config;
        config.params = ChainParams(n, n);
        config.replicas = options.replicas;
        config.master_seed = options.seed + static_cast<std::uint64_t>(n);
        config.clock = Clock::poisson(1.0);
        const auto summary = run_batch(config).summary;
        const auto& t = *summary.completion_time;
        const double exact = distributed_expectation(n, n, 1.0);
        out.push_back(bounded("poisson.mean_vs_exact(n=" + std::to_string(n) + ")",
                              std::abs(t.mean - exact) / t.standard_error, 4.0,
                              "in standard errors; mean=" + std::to_string(t.mean) +
                                  ", exact=" + std::to_string(exact)));
        const double ratio = t.mean / (2.0 * std::log(static_cast<double>(n)));
        ratios.push_back(ratio);
        const double outside = std::max({0.0, 0.9 - ratio, ratio - 1.6});
        out.push_back(bounded("poisson.ratio_to_2ln(n)(n=" + std::to_string(n) + ")", outside, 0.0,
                              "ratio=" + std::to_string(ratio)));
    }
    out.push_back(bounded("poisson.ratio_moves_toward_1", increases(ratios), 0.0, "ratios: " + join(ratios)));
}

} // namespace

Suite parse_suite(const std::string& name) {
    if (name == "t2") return Suite::t2;
    if (name == "t3") return Suite::t3;
    if (name == "nn") return Suite::nn;
    if (name == "fluid") return Suite::fluid;
    if (name == "poisson") return Suite::poisson;
    if (name == "all") return Suite::all;
    throw std::invalid_argument("unknown verify suite '" + name + "'");
}

std::string to_string(Suite suite) {
    switch (suite) {
    case Suite::t2: return "t2";
    case Suite::t3: return "t3";
    case Suite::nn: return "nn";
    case Suite::fluid: return "fluid";
    case Suite::poisson: return "poisson";
    case Suite::all: return "all";
    }
    return "?";
}

std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& options) {
    if (options.n_max && *options.n_max < 2) throw std::domain_error("verify: --n-max must be >= 2");
    auto n_max = [&](std::int64_t fallback) { return options.n_max.value_or(fallback); };
    std::vector<CheckResult> out;
    const bool all = suite == Suite::all;
    if (all || suite == Suite::t2) suite_t2(n_max(500), out);
    if (all || suite == Suite::t3) suite_t3(n_max(200), out);
    if (all || suite == Suite::nn) suite_nn(n_max(300), options.bound_slack, out);
    if (all || suite == Suite::fluid) suite_fluid(out);
    if (all || suite == Suite::poisson) suite_poisson(n_max(300), options, out);
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

} // namespace pushpull
