// pushpull: exact solver, simulator and checks for push-pull rumor spreading
// on complete bipartite graphs.
//
// Exit status: 0 success, 1 failed verification, 2 invalid input.

#include "pushpull/commands.hpp"
#include "pushpull/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

constexpr int kUsageError = 2;

struct Invocation {
    std::string command;
    pushpull::Json given = pushpull::Json::object();
};

template <typename T>
void keep_if_set(CLI::Option* opt, const T& value, const char* key, pushpull::Json& given) {
    if (opt->count() > 0) given[key] = value;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << body;
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

int emit(const std::string& command, const pushpull::Json& parameters, const std::string& out) {
    const auto full = pushpull::complete_parameters(command, parameters);
    const auto result = pushpull::execute(command, full);
    if (out.empty()) {
        std::cout << result.body;
    } else {
        write_file(out, result.body);
        write_file(manifest_path(out), pushpull::make_manifest(command, full, {out}).dump(2) + "\n");
        std::cerr << "wrote " << out << " and " << manifest_path(out) << '\n';
    }
    return result.exit_code;
}

int replay(const std::string& manifest_file, const std::string& out_override) {
    std::ifstream f(manifest_file);
    if (!f) throw std::invalid_argument("cannot read manifest '" + manifest_file + "'");
    pushpull::Json manifest;
    try {
        manifest = pushpull::Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed manifest: " + std::string(e.what()));
    }
    const auto command = manifest.at("command").get<std::string>();
    std::string out = out_override;
    if (out.empty() && !manifest.at("outputs").empty()) out = manifest.at("outputs").at(0).get<std::string>();
    return emit(command, manifest.at("parameters"), out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Push-pull rumor spreading on complete bipartite graphs: exact expectations, "
                 "Monte Carlo simulation, verification suites and figure data."};
    app.set_version_flag("--version", pushpull::tool_version());
    app.require_subcommand(1);

    std::int64_t n = 0, m = 0, n_max = 0, n_step = 10, stride = 0, histogram_phase = 1, grid = 201;
    std::uint64_t replicas = 0, seed = 0;
    double lambda = 1.0, alpha = 1.0, slack = 5.0;
    std::string mode, format, engine, suite, figure_id, manifest_file, out;

    auto* exact = app.add_subcommand("exact", "Expected total, phase-1 and phase-2 rounds by dynamic programming");
    auto* exact_n = exact->add_option("--n", n, "static nodes")->required()->check(CLI::PositiveNumber);
    auto* exact_m = exact->add_option("--m", m, "mobile nodes")->required()->check(CLI::PositiveNumber);
    auto* exact_format = exact->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    exact->add_option("--out", out, "output file (a manifest is written next to it)");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo replicas and summary statistics");
    auto* sim_n = sim->add_option("--n", n, "static nodes")->required()->check(CLI::PositiveNumber);
    auto* sim_m = sim->add_option("--m", m, "mobile nodes")->required()->check(CLI::PositiveNumber);
    auto* sim_replicas = sim->add_option("--replicas", replicas, "number of replicas")->check(CLI::PositiveNumber);
    auto* sim_seed = sim->add_option("--seed", seed, "master seed");
    auto* sim_mode = sim->add_option("--mode", mode, "rounds or poisson")->check(CLI::IsMember({"rounds", "poisson"}));
    auto* sim_lambda = sim->add_option("--lambda", lambda, "activation rate per mobile node (poisson mode)")
                           ->check(CLI::PositiveNumber);
    auto* sim_engine = sim->add_option("--engine", engine, "jump (default) or node")->check(CLI::IsMember({"jump", "node"}));
    auto* sim_stride = sim->add_option("--stride", stride, "trajectory stride (0 = automatic)")->check(CLI::NonNegativeNumber);
    auto* sim_phase = sim->add_option("--histogram-phase", histogram_phase, "boundary b -> b+1 to histogram")
                          ->check(CLI::PositiveNumber);
    auto* sim_format = sim->add_option("--format", format, "json or csv")->check(CLI::IsMember({"csv", "json"}));
    sim->add_option("--out", out, "output file (a manifest is written next to it)");

    auto* ver = app.add_subcommand("verify", "Run a verification suite; exits 1 if any check fails");
    ver->add_option("suite", suite, "t2, t3, nn, fluid, poisson or all")
        ->required()
        ->check(CLI::IsMember({"t2", "t3", "nn", "fluid", "poisson", "all"}));
    auto* ver_nmax = ver->add_option("--n-max", n_max, "largest size swept")->check(CLI::Range(2, 1'000'000));
    auto* ver_seed = ver->add_option("--seed", seed, "master seed for Monte Carlo checks");
    auto* ver_replicas = ver->add_option("--replicas", replicas, "replicas for Monte Carlo checks")
                             ->check(CLI::Range(2, 100'000'000));
    auto* ver_slack = ver->add_option("--slack", slack, "additive slack for the square-chain bounds")
                          ->check(CLI::NonNegativeNumber);
    auto* ver_format = ver->add_option("--format", format, "text, csv or json")
                           ->check(CLI::IsMember({"text", "csv", "json"}));
    ver->add_option("--out", out, "output file (a manifest is written next to it)");

    auto* fig = app.add_subcommand("figure", "Emit figure data as CSV");
    fig->add_option("id", figure_id, "bounds, fluid-a, fluid-b or fluid-c")
        ->required()
        ->check(CLI::IsMember({"bounds", "fluid-a", "fluid-b", "fluid-c"}));
    auto* fig_nmax = fig->add_option("--n-max", n_max, "bounds: largest n")->check(CLI::Range(2, 1'000'000));
    auto* fig_nstep = fig->add_option("--n-step", n_step, "bounds: spacing of n")->check(CLI::PositiveNumber);
    auto* fig_replicas = fig->add_option("--replicas", replicas, "fluid: simulated paths")->check(CLI::PositiveNumber);
    auto* fig_seed = fig->add_option("--seed", seed, "fluid: master seed");
    auto* fig_grid = fig->add_option("--grid", grid, "fluid: x-grid points")->check(CLI::Range(2, 1'000'000));
    auto* fig_alpha = fig->add_option("--alpha", alpha, "fluid: static/mobile ratio override")->check(CLI::PositiveNumber);
    auto* fig_n = fig->add_option("--n", n, "fluid: mobile count override")->check(CLI::PositiveNumber);
    fig->add_option("--out", out, "output file (default <id>.csv)");

    auto* rep = app.add_subcommand("replay", "Re-run a command from its manifest");
    rep->add_option("manifest", manifest_file, "manifest JSON written next to an output")->required();
    rep->add_option("--out", out, "write here instead of the recorded output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (rep->parsed()) return replay(manifest_file, out);

        Invocation inv;
        auto& g = inv.given;
        if (exact->parsed()) {
            inv.command = "exact";
            keep_if_set(exact_n, n, "n", g);
            keep_if_set(exact_m, m, "m", g);
            keep_if_set(exact_format, format, "format", g);
        } else if (sim->parsed()) {
            inv.command = "simulate";
            keep_if_set(sim_n, n, "n", g);
            keep_if_set(sim_m, m, "m", g);
            keep_if_set(sim_replicas, replicas, "replicas", g);
            keep_if_set(sim_seed, seed, "seed", g);
            keep_if_set(sim_mode, mode, "mode", g);
            keep_if_set(sim_lambda, lambda, "lambda", g);
            keep_if_set(sim_engine, engine, "engine", g);
            keep_if_set(sim_stride, stride, "stride", g);
            keep_if_set(sim_phase, histogram_phase, "histogram_phase", g);
            keep_if_set(sim_format, format, "format", g);
        } else if (ver->parsed()) {
            inv.command = "verify";
            g["suite"] = suite;
            keep_if_set(ver_nmax, n_max, "n_max", g);
            keep_if_set(ver_seed, seed, "seed", g);
            keep_if_set(ver_replicas, replicas, "replicas", g);
            keep_if_set(ver_slack, slack, "slack", g);
            keep_if_set(ver_format, format, "format", g);
        } else {
            inv.command = "figure";
            g["id"] = figure_id;
            keep_if_set(fig_nmax, n_max, "n_max", g);
            keep_if_set(fig_nstep, n_step, "n_step", g);
            keep_if_set(fig_replicas, replicas, "replicas", g);
            keep_if_set(fig_seed, seed, "seed", g);
            keep_if_set(fig_grid, grid, "grid", g);
            keep_if_set(fig_alpha, alpha, "alpha", g);
            keep_if_set(fig_n, n, "n", g);
            if (out.empty()) out = figure_id + ".csv";
        }
        return emit(inv.command, inv.given, out);
    } catch (const pushpull::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }
}
