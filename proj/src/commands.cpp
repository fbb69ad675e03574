#include "pushpull/commands.hpp"

#include "pushpull/chain.hpp"
#include "pushpull/figures.hpp"
#include "pushpull/simulator.hpp"
#include "pushpull/verify.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#ifndef PUSHPULL_VERSION
#define PUSHPULL_VERSION "0.0.0"
#endif

namespace pushpull {

namespace {

Json defaults_for(const std::string& command) {
    if (command == "exact") return Json{{"n", nullptr}, {"m", nullptr}, {"format", "csv"}};
    if (command == "simulate") {
        return Json{{"n", nullptr},       {"m", nullptr},       {"replicas", 1000},
                    {"seed", 0},          {"mode", "rounds"},   {"lambda", 1.0},
                    {"engine", "jump"},   {"stride", 0},        {"histogram_phase", 1},
                    {"format", "json"}};
    }
    if (command == "verify") {
        return Json{{"suite", nullptr}, {"n_max", nullptr}, {"seed", 20240229},
                    {"replicas", 2000}, {"slack", 5.0},     {"format", "text"}};
    }
    if (command == "figure") {
        return Json{{"id", nullptr},   {"n_max", 2000}, {"n_step", 10}, {"replicas", 1000},
                    {"seed", 0},       {"grid", 201},   {"alpha", nullptr}, {"n", nullptr}};
    }
    throw std::invalid_argument("unknown command '" + command + "'");
}

template <typename T>
T get(const Json& params, const char* key) {
    const auto& v = params.at(key);
    if (v.is_null()) throw std::invalid_argument(std::string("missing required parameter '") + key + "'");
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument(std::string("malformed parameter '") + key + "'");
    }
}

std::int64_t get_count(const Json& params, const char* key, std::int64_t min) {
    const auto v = get<std::int64_t>(params, key);
    if (v < min) {
        throw std::domain_error(std::string("parameter '") + key + "' must be >= " + std::to_string(min));
    }
    return v;
}

std::string require_one_of(const std::string& value, std::initializer_list<const char*> allowed,
                           const char* key) {
    for (const char* a : allowed)
        if (value == a) return value;
    throw std::invalid_argument(std::string("parameter '") + key + "' has unsupported value '" + value + "'");
}

Json sample_json(const SampleSummary& s) {
    return Json{{"mean", s.mean},
                {"variance", s.variance},
                {"standard_error", s.standard_error},
                {"quantiles",
                 Json{{"q01", s.quantiles.q01},
                      {"q25", s.quantiles.q25},
                      {"q50", s.quantiles.q50},
                      {"q75", s.quantiles.q75},
                      {"q99", s.quantiles.q99}}}};
}

std::string sample_csv_row(const std::string& label, const SampleSummary& s) {
    return label + "," + format_real(s.mean) + "," + format_real(s.variance) + "," +
           format_real(s.standard_error) + "," + format_real(s.quantiles.q01) + "," +
           format_real(s.quantiles.q25) + "," + format_real(s.quantiles.q50) + "," +
           format_real(s.quantiles.q75) + "," + format_real(s.quantiles.q99) + "\n";
}

CommandOutput run_exact(const Json& p) {
    const ChainParams params(get_count(p, "n", 1), get_count(p, "m", 1));
    const auto format = require_one_of(get<std::string>(p, "format"), {"csv", "json"}, "format");
    const double phase2 = expected_phase2_time(params);
    const double phase1 = static_cast<double>(params.n);
    const double total = phase1 + phase2;
    if (format == "json") {
        Json out{{"n", params.n},
                 {"m", params.m},
                 {"expected_total", total},
                 {"expected_phase1", phase1},
                 {"expected_phase2", phase2}};
        return {out.dump(2) + "\n", 0};
    }
    return {"n,m,expected_total,expected_phase1,expected_phase2\n" + std::to_string(params.n) + "," +
                std::to_string(params.m) + "," + format_real(total) + "," + format_real(phase1) + "," +
                format_real(phase2) + "\n",
            0};
}

CommandOutput run_simulate(const Json& p) {
    SimConfig config;
    config.params = ChainParams(get_count(p, "n", 1), get_count(p, "m", 1));
    config.replicas = static_cast<std::uint64_t>(get_count(p, "replicas", 1));
    config.master_seed = get<std::uint64_t>(p, "seed");
    const auto mode = require_one_of(get<std::string>(p, "mode"), {"rounds", "poisson"}, "mode");
    config.clock = mode == "poisson" ? Clock::poisson(get<double>(p, "lambda")) : Clock::rounds();
    const auto engine = require_one_of(get<std::string>(p, "engine"), {"jump", "node"}, "engine");
    config.engine = engine == "node" ? Engine::node_level : Engine::jump;
    config.trajectory_stride = get_count(p, "stride", 0);
    config.histogram_phase = get_count(p, "histogram_phase", 1);
    const auto format = require_one_of(get<std::string>(p, "format"), {"csv", "json"}, "format");

    const auto summary = run_batch(config).summary;
    if (format == "csv") {
        std::string out = "statistic,mean,variance,standard_error,q01,q25,q50,q75,q99\n";
        out += sample_csv_row("steps", summary.steps);
        out += sample_csv_row("phase1_steps", summary.phase1_steps);
        if (summary.completion_time) out += sample_csv_row("completion_time", *summary.completion_time);
        return {out, 0};
    }
    Json out{{"n", config.params.n},
             {"m", config.params.m},
             {"replicas", summary.replica_count},
             {"seed", config.master_seed},
             {"mode", mode},
             {"lambda", config.clock.lambda},
             {"engine", engine},
             {"steps", sample_json(summary.steps)},
             {"phase1_steps", sample_json(summary.phase1_steps)}};
    out["completion_time"] = summary.completion_time ? sample_json(*summary.completion_time) : Json(nullptr);
    out["histogram_phase"] = summary.histogram_phase;
    out["boundary_histogram"] = summary.boundary_histogram;
    return {out.dump(2) + "\n", 0};
}

CommandOutput run_verify(const Json& p) {
    const auto suite = parse_suite(get<std::string>(p, "suite"));
    VerifyOptions options;
    if (!p.at("n_max").is_null()) options.n_max = get_count(p, "n_max", 2);
    options.seed = get<std::uint64_t>(p, "seed");
    options.replicas = static_cast<std::uint64_t>(get_count(p, "replicas", 2));
    options.bound_slack = get<double>(p, "slack");
    const auto format = require_one_of(get<std::string>(p, "format"), {"text", "csv", "json"}, "format");

    const auto results = run_suite(suite, options);
    const int code = all_passed(results) ? 0 : 1;
    if (format == "json") {
        Json rows = Json::array();
        for (const auto& r : results) {
            rows.push_back(Json{{"name", r.name},
                                {"status", r.informational ? "info" : (r.passed ? "pass" : "fail")},
                                {"residual", r.residual},
                                {"tolerance", r.tolerance},
                                {"detail", r.detail}});
        }
        Json out{{"suite", to_string(suite)}, {"passed", code == 0}, {"checks", rows}};
        return {out.dump(2) + "\n", code};
    }
    std::ostringstream os;
    if (format == "csv") os << "name,status,residual,tolerance,detail\n";
    for (const auto& r : results) {
        const char* status = r.informational ? "INFO" : (r.passed ? "PASS" : "FAIL");
        if (format == "csv") {
            os << r.name << ',' << status << ',' << format_real(r.residual) << ','
               << format_real(r.tolerance) << ",\"" << r.detail << "\"\n";
        } else {
            char buf[64];
            std::snprintf(buf, sizeof buf, "residual=%.3e tol=%.1e", r.residual, r.tolerance);
            os << status << "  " << r.name << "  " << (r.informational ? "residual=" + format_real(r.residual) : buf);
            if (!r.detail.empty()) os << "  (" << r.detail << ")";
            os << '\n';
        }
    }
    if (format == "text") os << (code == 0 ? "all checks passed\n" : "verification FAILED\n");
    return {os.str(), code};
}

CommandOutput run_figure(const Json& p) {
    const auto id = get<std::string>(p, "id");
    std::ostringstream os;
    if (id == "bounds") {
        const auto rows = bounds_figure(get_count(p, "n_max", 2), get_count(p, "n_step", 1));
        os << "n,exact,lower,upper\n";
        for (const auto& r : rows)
            os << r.n << ',' << format_real(r.exact) << ',' << format_real(r.lower) << ','
               << format_real(r.upper) << '\n';
        return {os.str(), 0};
    }
    auto spec = fluid_figure_spec(id);
    if (!p.at("alpha").is_null()) {
        spec.alpha = get<double>(p, "alpha");
        if (!(spec.alpha > 0.0)) throw std::domain_error("parameter 'alpha' must be > 0");
    }
    if (!p.at("n").is_null()) spec.n_mobile = get_count(p, "n", 1);
    if (spec.n_static() < 2) throw std::domain_error("fluid figure needs at least two static nodes");
    const auto rows = fluid_band_figure(spec, static_cast<std::uint64_t>(get_count(p, "replicas", 1)),
                                        get<std::uint64_t>(p, "seed"), get_count(p, "grid", 2));
    os << "x,y_sim_band_low,y_sim_band_high,y_closed_form\n";
    for (const auto& r : rows)
        os << format_real(r.x) << ',' << format_real(r.y_sim_band_low) << ','
           << format_real(r.y_sim_band_high) << ',' << format_real(r.y_closed_form) << '\n';
    return {os.str(), 0};
}

} // namespace

std::string tool_version() { return PUSHPULL_VERSION; }

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

Json complete_parameters(const std::string& command, const Json& given) {
    Json params = defaults_for(command);
    if (!given.is_object()) throw std::invalid_argument("parameters must be a JSON object");
    for (const auto& [key, value] : given.items()) {
        if (!params.contains(key)) {
            throw std::invalid_argument("command '" + command + "' has no parameter '" + key + "'");
        }
        params[key] = value;
    }
    return params;
}

CommandOutput execute(const std::string& command, const Json& parameters) {
    const Json p = complete_parameters(command, parameters);
    if (command == "exact") return run_exact(p);
    if (command == "simulate") return run_simulate(p);
    if (command == "verify") return run_verify(p);
    return run_figure(p);
}

Json make_manifest(const std::string& command, const Json& parameters,
                   const std::vector<std::string>& outputs) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
    Json seed = parameters.contains("seed") ? parameters.at("seed") : Json(nullptr);
    return Json{{"command", command},
                {"parameters", parameters},
                {"master_seed", seed},
                {"tool_version", tool_version()},
                {"timestamp", stamp},
                {"outputs", outputs}};
}

} // namespace pushpull
