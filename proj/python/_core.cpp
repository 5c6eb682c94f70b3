#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pointerlab/commands.hpp"
#include "pointerlab/model.hpp"
#include "pointerlab/oracle.hpp"

namespace py = pybind11;
using namespace pointerlab;

namespace {

Matrix2 partial_trace_reference(const ApparatusSpec& spec, const SystemInit& sys, double t) {
    return oracle::partial_trace_system(oracle::evolve_full(spec, sys, t));
}

py::dict timeset_dict(const TimeSet& ts) {
    py::list intervals;
    for (const auto& iv : ts.intervals()) intervals.append(py::make_tuple(iv.lo, iv.hi));
    py::dict d;
    d["horizon"] = py::make_tuple(ts.horizon().lo, ts.horizon().hi);
    d["intervals"] = intervals;
    d["points"] = ts.points();
    return d;
}

std::string run_command(const std::string& name, const std::string& config_json,
                        std::optional<std::uint64_t> seed, unsigned threads) {
    RunConfig cfg = parse_config(Json::parse(config_json));
    const commands::Options opts{seed, threads};
    commands::apply_overrides(cfg, opts);
    if (name == "simulate") return commands::simulate(cfg);
    if (name == "windows") return commands::windows(cfg, opts);
    if (name == "classify") return commands::classify(cfg, opts);
    if (name == "oracle-check") return commands::oracle_check(cfg).json;
    if (name == "sweep") return commands::sweep(cfg, opts);
    if (name == "info") return commands::info(cfg);
    throw ValidationError("unknown command \"" + name + "\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pointer-state decoherence toolkit";

    auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

    py::class_<QubitInit>(m, "QubitInit")
        .def(py::init<Complex, Complex>(), py::arg("alpha"), py::arg("beta"))
        .def_static("equatorial", &QubitInit::equatorial, py::arg("phase") = 0.0)
        .def_static("up", &QubitInit::up)
        .def_static("down", &QubitInit::down)
        .def_property_readonly("alpha", &QubitInit::alpha)
        .def_property_readonly("beta", &QubitInit::beta);

    py::class_<SystemInit>(m, "SystemInit")
        .def(py::init<Complex, Complex>(), py::arg("a"), py::arg("b"))
        .def_property_readonly("a", &SystemInit::a)
        .def_property_readonly("b", &SystemInit::b);

    py::class_<ApparatusSpec>(m, "ApparatusSpec")
        .def(py::init<std::vector<double>, std::vector<QubitInit>>(), py::arg("couplings"), py::arg("inits"))
        .def_property_readonly("couplings", &ApparatusSpec::couplings)
        .def_property_readonly("inits", &ApparatusSpec::inits)
        .def("__len__", &ApparatusSpec::size);

    m.def(
        "ordered",
        [](double g, std::size_t n) { return make_apparatus(Ordered{g}, n, EquatorialInits{}); },
        py::arg("g"), py::arg("n"), "Ordered apparatus with equatorial inits.");
    m.def(
        "disordered",
        [](double g_lo, double g_hi, std::size_t n, std::uint64_t seed) {
            return make_apparatus(Disordered{g_lo, g_hi, seed}, n, EquatorialInits{});
        },
        py::arg("g_lo"), py::arg("g_hi"), py::arg("n"), py::arg("seed"),
        "Couplings drawn uniformly from [g_lo, g_hi) with equatorial inits.");

    m.def("overlap", &overlap, py::arg("spec"), py::arg("t"));
    m.def("availability", &availability, py::arg("spec"), py::arg("t"));
    m.def(
        "sample_availability",
        [](const ApparatusSpec& spec, const std::vector<double>& grid) {
            std::vector<double> out;
            for (const auto& s : sample_availability(spec, grid)) out.push_back(s.availability);
            return out;
        },
        py::arg("spec"), py::arg("grid"));
    m.def("reduced_system_state", &reduced_system_state, py::arg("spec"), py::arg("system"), py::arg("t"));
    m.def("partial_trace_reference", &partial_trace_reference, py::arg("spec"), py::arg("system"), py::arg("t"),
          "Reduced state from the full state-vector evolution (N <= 12).");
    m.def("long_time_variance", &long_time_variance, py::arg("spec"));

    py::class_<WindowConfig>(m, "WindowConfig")
        .def_static("defaults_for", &WindowConfig::defaults_for, py::arg("spec"), py::arg("epsilon"), py::arg("t_max"))
        .def_readwrite("epsilon", &WindowConfig::epsilon)
        .def_readwrite("t_max", &WindowConfig::t_max)
        .def_readwrite("grid_step", &WindowConfig::grid_step)
        .def_readwrite("refine_tol", &WindowConfig::refine_tol)
        .def_readwrite("revival_eta", &WindowConfig::revival_eta)
        .def_readwrite("threads", &WindowConfig::threads);

    m.def(
        "wprc_set", [](const ApparatusSpec& s, const WindowConfig& c) { return timeset_dict(wprc_set(s, c)); },
        py::arg("spec"), py::arg("config"));
    m.def(
        "prc_times", [](const ApparatusSpec& s, const WindowConfig& c) { return prc_times(s, c).points(); },
        py::arg("spec"), py::arg("config"));
    m.def(
        "revivals", [](const ApparatusSpec& s, const WindowConfig& c) { return revivals(s, c).times; },
        py::arg("spec"), py::arg("config"));
    m.def(
        "longest_window",
        [](const ApparatusSpec& s, const WindowConfig& c) { return longest_window(wprc_set(s, c)).duration; },
        py::arg("spec"), py::arg("config"));

    m.def(
        "accessibility",
        [](long long n, double e0, double noise_floor, double max_energy) {
            const auto r = accessibility(n, {e0, noise_floor, max_energy});
            return py::make_tuple(to_string(r.verdict), r.n_lower, r.n_upper);
        },
        py::arg("n"), py::arg("e0"), py::arg("noise_floor"), py::arg("max_energy"));
    m.def(
        "compare_quality",
        [](std::pair<double, double> a, std::pair<double, double> b) {
            return to_string(compare_quality({a.first, a.second}, {b.first, b.second}));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "info_deficit",
        [](const std::vector<Complex>& coeffs, double eps) {
            const auto r = wprc_info_deficit(GeneralState(coeffs), eps);
            py::dict d;
            d["mutual_info"] = r.mutual_info;
            d["deficit"] = *r.deficit;
            d["deficit_leading_order"] = *r.deficit_leading_order;
            d["deficit_remainder"] = *r.deficit_remainder;
            d["degenerate"] = r.degenerate;
            return d;
        },
        py::arg("coeffs"), py::arg("epsilon"));

    m.def("run", &run_command, py::arg("command"), py::arg("config_json"), py::arg("seed") = std::nullopt,
          py::arg("threads") = 1u, "Run a CLI subcommand on a JSON config string and return its text output.");

    (void)validation;
}
