#include "pushpull/chain.hpp"
#include "pushpull/closed_form.hpp"
#include "pushpull/commands.hpp"
#include "pushpull/errors.hpp"
#include "pushpull/fluid.hpp"
#include "pushpull/rng.hpp"
#include "pushpull/simulator.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace pushpull;

namespace {

Clock make_clock(const std::string& mode, double lambda) {
    if (mode == "rounds") return Clock::rounds();
    if (mode == "poisson") return Clock::poisson(lambda);
    throw std::invalid_argument("mode must be 'rounds' or 'poisson'");
}

Engine make_engine(const std::string& engine) {
    if (engine == "jump") return Engine::jump;
    if (engine == "node") return Engine::node_level;
    throw std::invalid_argument("engine must be 'jump' or 'node'");
}

py::dict sample_dict(const SampleSummary& s) {
    py::dict d;
    d["mean"] = s.mean;
    d["variance"] = s.variance;
    d["standard_error"] = s.standard_error;
    d["quantiles"] = py::make_tuple(s.quantiles.q01, s.quantiles.q25, s.quantiles.q50,
                                    s.quantiles.q75, s.quantiles.q99);
    return d;
}

py::array_t<double> column(const std::vector<ProportionPoint>& pts, double ProportionPoint::*field) {
    std::vector<double> values;
    values.reserve(pts.size());
    for (const auto& p : pts) values.push_back(p.*field);
    return py::array_t<double>(static_cast<py::ssize_t>(values.size()), values.data());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Push-pull rumor spreading on complete bipartite graphs";

    py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    // chain
    m.def("expected_total_time", [](std::int64_t n, std::int64_t mm) { return expected_total_time({n, mm}); },
          py::arg("n"), py::arg("m"), "E[T] from (1, 0) by backward dynamic programming");
    m.def("expected_phase2_time", [](std::int64_t n, std::int64_t mm) { return expected_phase2_time({n, mm}); },
          py::arg("n"), py::arg("m"));
    m.def(
        "step_distribution",
        [](std::int64_t n, std::int64_t mm, std::int64_t a, std::int64_t b) {
            const auto d = step_distribution({n, mm}, {a, b});
            return py::make_tuple(d.p_right, d.p_up, d.p_stay);
        },
        py::arg("n"), py::arg("m"), py::arg("a"), py::arg("b"), "(p_right, p_up, p_stay)");
    m.def("expected_stay_rounds",
          [](std::int64_t n, std::int64_t mm, std::int64_t a, std::int64_t b) {
              return expected_stay_rounds({n, mm}, {a, b});
          },
          py::arg("n"), py::arg("m"), py::arg("a"), py::arg("b"));
    m.def("phase_boundary_distribution",
          [](std::int64_t n, std::int64_t mm, std::int64_t phase) {
              return phase_boundary_distribution({n, mm}, phase).mass;
          },
          py::arg("n"), py::arg("m"), py::arg("phase"), "mass[a - 1] for a = 1..n");
    m.def(
        "diagonal_extrema",
        [](std::int64_t n, std::int64_t a) {
            const auto e = diagonal_extrema({n, n}, a);
            return py::make_tuple(py::make_tuple(e.argmax.a, e.argmax.b), py::make_tuple(e.argmin.a, e.argmin.b));
        },
        py::arg("n"), py::arg("a"), "((argmax), (argmin)) of the stay probability on i + j = a");

    // closed forms
    m.def("harmonic", &harmonic, py::arg("k"));
    m.def("p_a_closed", &p_a_closed, py::arg("n"), py::arg("a"));
    m.def("p_ab_closed", &p_ab_closed, py::arg("n"), py::arg("a"), py::arg("b"));
    m.def("birthday_expectation_exact", &birthday_expectation_exact, py::arg("n"));
    m.def("coupon_expectation", &coupon_expectation, py::arg("n"));
    m.def("factorial_ratio", &factorial_ratio, py::arg("n"));
    m.def("t2_exact_series", &t2_exact_series, py::arg("n"));
    m.def("t2_asymptotic", [](std::int64_t n) { return t2_asymptotic(n).value; }, py::arg("n"));
    m.def("t2_relation", [](std::int64_t n) {
        const auto r = t2_relation(n);
        return py::make_tuple(r.corrected, r.printed);
    }, py::arg("n"), "(corrected, printed)");
    m.def("t3_exact_series", &t3_exact_series, py::arg("n"));
    m.def("t3_relation_term", &t3_relation_term, py::arg("n"));
    m.def("t3_relation", [](std::int64_t n) {
        const auto r = t3_relation(n);
        return py::make_tuple(r.corrected, r.printed);
    }, py::arg("n"), "(corrected, printed)");
    m.def("t3_asymptotic", [](std::int64_t n) { return t3_asymptotic(n).value; }, py::arg("n"));
    m.def("tnn_bounds", [](std::int64_t n) {
        const auto b = tnn_bounds(n);
        return py::make_tuple(b.lower, b.upper);
    }, py::arg("n"), "(lower, upper) without the O(1) terms");
    m.def("distributed_expectation", &distributed_expectation, py::arg("n"), py::arg("m"), py::arg("lam"));

    // simulator
    m.def("replica_seed", &replica_seed, py::arg("master_seed"), py::arg("index"));
    m.def(
        "run_replica",
        [](std::int64_t n, std::int64_t mm, std::uint64_t seed, const std::string& mode, double lam,
           const std::string& engine, bool record_trajectory) {
            ReplicaOptions options;
            options.engine = make_engine(engine);
            options.record_trajectory = record_trajectory;
            const auto r = run_replica({n, mm}, seed, make_clock(mode, lam), options);
            py::dict d;
            d["steps"] = r.steps;
            d["completion_time"] = r.completion_time;
            d["phase1_steps"] = r.phase1_steps;
            d["boundary_static_counts"] = r.boundary_static_counts;
            py::list path;
            for (const auto& p : r.trajectory) path.append(py::make_tuple(p.time, p.a, p.b));
            d["trajectory"] = path;
            return d;
        },
        py::arg("n"), py::arg("m"), py::arg("seed"), py::arg("mode") = "rounds", py::arg("lam") = 1.0,
        py::arg("engine") = "jump", py::arg("record_trajectory") = false);
    m.def(
        "run_batch",
        [](std::int64_t n, std::int64_t mm, std::uint64_t replicas, std::uint64_t seed, const std::string& mode,
           double lam, const std::string& engine) {
            SimConfig config;
            config.params = ChainParams(n, mm);
            config.replicas = replicas;
            config.master_seed = seed;
            config.clock = make_clock(mode, lam);
            config.engine = make_engine(engine);
            SimSummary s;
            {
                py::gil_scoped_release release;
                s = run_batch(config).summary;
            }
            py::dict d;
            d["replica_count"] = s.replica_count;
            d["steps"] = sample_dict(s.steps);
            d["phase1_steps"] = sample_dict(s.phase1_steps);
            d["completion_time"] = s.completion_time ? py::object(sample_dict(*s.completion_time)) : py::none();
            d["boundary_histogram"] = s.boundary_histogram;
            return d;
        },
        py::arg("n"), py::arg("m"), py::arg("replicas"), py::arg("seed") = 0, py::arg("mode") = "rounds",
        py::arg("lam") = 1.0, py::arg("engine") = "jump");

    // fluid limit
    m.def("lambert_w0", &lambert_w0, py::arg("z"));
    m.def("fluid_phase_curve", [](double alpha, double n, double x) {
        return fluid_phase_curve(FluidParams(alpha, n), x);
    }, py::arg("alpha"), py::arg("n"), py::arg("x"));
    m.def(
        "fluid_trajectory",
        [](double alpha, double n, std::optional<double> t_max, std::optional<double> dt) {
            const FluidParams fp(alpha, n);
            const auto curve = fluid_trajectory(fp, t_max.value_or(default_fluid_t_max(fp)),
                                                dt.value_or(default_fluid_dt(fp)));
            return py::make_tuple(column(curve.samples, &ProportionPoint::t),
                                  column(curve.samples, &ProportionPoint::x),
                                  column(curve.samples, &ProportionPoint::y));
        },
        py::arg("alpha"), py::arg("n"), py::arg("t_max") = py::none(), py::arg("dt") = py::none(),
        "(t, x, y) arrays from RK4 integration of the mean-field system");

    // command layer, the same entry point the CLI uses
    m.def(
        "execute",
        [](const std::string& command, const std::string& parameters_json) {
            const auto full = complete_parameters(command, Json::parse(parameters_json));
            CommandOutput out;
            {
                py::gil_scoped_release release;
                out = execute(command, full);
            }
            return py::make_tuple(out.body, out.exit_code);
        },
        py::arg("command"), py::arg("parameters_json"), "(output text, exit code)");

    m.attr("__version__") = tool_version();
}
