#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tiqca/compiler.hpp"
#include "tiqca/ensemble.hpp"
#include "tiqca/verify.hpp"

namespace py = pybind11;
using namespace tiqca;

namespace {

LatticeConfig make_config(int m, int levels, const std::string& boundary) {
    Boundary b;
    if (boundary == "periodic")
        b = Boundary::Periodic;
    else if (boundary == "open")
        b = Boundary::Open;
    else
        throw Error(ErrorKind::ParseError, "boundary must be 'periodic' or 'open'");
    LatticeConfig cfg{m, b, SchemeMode::from_levels(levels)};
    cfg.validate();
    return cfg;
}

py::dict report_to_dict(const EnsembleReport& r) {
    py::dict d;
    d["m"] = r.m;
    d["epsilon"] = r.epsilon;
    d["n"] = r.n;
    d["trials"] = r.trials;
    d["seed"] = r.seed;
    d["mode_levels"] = r.mode_levels;
    d["partitions_mean"] = r.partitions_mean;
    d["partitions_stderr"] = r.partitions_stderr;
    d["working_mean"] = r.working_mean;
    d["working_stderr"] = r.working_stderr;
    d["predicted_partitions"] = r.predicted_partitions;
    d["predicted_working"] = r.predicted_working;
    d["m3_mean"] = r.m3_mean;
    d["m3_stderr"] = r.m3_stderr;
    d["m4_mean"] = r.m4_mean;
    d["m4_stderr"] = r.m4_stderr;
    d["m4_working_mean"] = r.m4_working_mean;
    d["m4_other_mean"] = r.m4_other_mean;
    d["skipped_count"] = r.skipped_count;
    d["crosscheck_count"] = r.crosscheck_count;
    d["crosscheck_max_dev"] = r.crosscheck_max_dev;
    d["escape_fraction"] = r.escape_fraction;
    return d;
}

}  // namespace

PYBIND11_MODULE(tiqca, m) {
    m.doc() = "Pointer-based quantum computation on a globally pulsed, translation-invariant qudit chain";

    py::register_exception<Error>(m, "TiqcaError");

    py::class_<LatticeConfig>(m, "LatticeConfig")
        .def(py::init(&make_config), py::arg("m"), py::arg("levels") = 6,
             py::arg("boundary") = "periodic")
        .def_readonly("m", &LatticeConfig::m)
        .def_property_readonly("levels", [](const LatticeConfig& c) { return c.mode.levels; })
        .def_property_readonly("wall_level", [](const LatticeConfig& c) { return c.mode.wall_level; })
        .def_property_readonly("boundary", [](const LatticeConfig& c) {
            return c.boundary == Boundary::Periodic ? "periodic" : "open";
        });

    py::class_<SparseState>(m, "SparseState")
        .def_property_readonly("config", [](const SparseState& s) { return s.config; })
        .def("norm", &SparseState::norm)
        .def("amplitudes",
             [](const SparseState& s) {
                 py::dict d;
                 for (const auto& [k, a] : s.sorted_support()) d[py::str(k)] = a;
                 return d;
             })
        .def("expectation_level_count",
             [](const SparseState& s, int level) { return expectation_level_count(s, level); })
        .def("__len__", [](const SparseState& s) { return s.amps.size(); });

    py::class_<PulseProgram>(m, "PulseProgram")
        .def_property_readonly("name", [](const PulseProgram& p) { return p.name; })
        .def("__len__", [](const PulseProgram& p) { return p.pulses.size(); })
        .def("to_text", &program_to_text)
        .def("inverted", [](const PulseProgram& p) { return invert(p); });

    py::class_<CompiledProgram>(m, "CompiledProgram")
        .def_readonly("n", &CompiledProgram::n)
        .def_readonly("l_min", &CompiledProgram::l_min)
        .def_property_readonly("program", [](const CompiledProgram& c) { return c.program; })
        .def_property_readonly("gap_trajectory",
                               [](const CompiledProgram& c) { return c.gap_trajectory(); });

    m.def("make_basis_state", &make_basis_state, py::arg("config"), py::arg("s"));
    m.def(
        "make_product_state",
        [](const LatticeConfig& cfg, const std::vector<cplx>& amps) {
            return make_product_state(cfg, amps);
        },
        py::arg("config"), py::arg("site_amps"));
    m.def("inner_product", &inner_product);

    m.def(
        "parse_pulse_program",
        [](const std::string& text, int levels) {
            return parse_pulse_program(text, SchemeMode::from_levels(levels));
        },
        py::arg("text"), py::arg("levels") = 6);
    m.def("apply_program", &apply_program, py::arg("state"), py::arg("program"));
    m.def(
        "macro_program",
        [](const std::string& name, int levels) {
            return macro_program(macro_name_from_str(name), SchemeMode::from_levels(levels));
        },
        py::arg("name"), py::arg("levels") = 6);
    m.def("create_pointers", &create_pointers);

    m.def(
        "pointer_census",
        [](const BasisString& s, int levels) {
            PointerCensus c = pointer_census(s, SchemeMode::from_levels(levels));
            py::dict d;
            d["right_pointers"] = c.right_pointers;
            d["left_pointers"] = c.left_pointers;
            d["inactive_pairs"] = c.inactive_pairs;
            d["wall_positions"] = c.wall_positions;
            d["total_pointers"] = c.total_pointers();
            return d;
        },
        py::arg("s"), py::arg("levels") = 6);
    m.def(
        "partition_split",
        [](const BasisString& s, int levels, const std::string& boundary) {
            return partition_split(s, SchemeMode::from_levels(levels),
                                   boundary == "open" ? Boundary::Open : Boundary::Periodic);
        },
        py::arg("s"), py::arg("levels") = 6, py::arg("boundary") = "periodic");

    m.def(
        "compile_circuit",
        [](const std::string& circuit_text, int levels) {
            return compile_circuit(parse_circuit(circuit_text), SchemeMode::from_levels(levels));
        },
        py::arg("circuit_text"), py::arg("levels") = 6);
    m.def("reference_simulate", [](const std::string& circuit_text) {
        ReferenceResult r = reference_simulate(parse_circuit(circuit_text));
        py::dict d;
        d["amplitudes"] = r.amplitudes;
        d["measured"] = r.measured;
        d["measured_qubit"] = r.measured_qubit;
        d["p_one"] = r.p_one;
        return d;
    });
    m.def("logical_readout", &logical_readout, py::arg("state"), py::arg("start"),
          py::arg("length"), py::arg("n"));

    m.def("expected_partitions", &expected_partitions);
    m.def("expected_working", &expected_working);
    m.def("partition_tail_probability", &partition_tail_probability);
    m.def("scaling_table", [](const std::vector<int>& ns) {
        py::list rows;
        for (const ScalingRow& r : scaling_table(ns)) {
            py::dict d;
            d["n"] = r.n;
            d["epsilon"] = r.epsilon;
            d["ratio"] = r.ratio;
            d["working_density"] = r.working_density;
            rows.append(d);
        }
        return rows;
    });

    m.def(
        "run_ensemble",
        [](std::int64_t m_sites, double epsilon, int n, int trials, std::uint64_t seed,
           const std::string& circuit_text, int levels, int cap) {
            EnsembleParams params;
            params.m = m_sites;
            params.epsilon = epsilon;
            params.n = n;
            params.trials = trials;
            params.master_seed = seed;
            params.mode = SchemeMode::from_levels(levels);
            params.pulse_cap = cap;
            return report_to_dict(run_ensemble(params, parse_circuit(circuit_text)));
        },
        py::arg("m"), py::arg("epsilon"), py::arg("n"), py::arg("trials"), py::arg("seed"),
        py::arg("circuit_text"), py::arg("levels") = 6, py::arg("cap") = 16);

    m.def(
        "pure_mixed_equivalence",
        [](int m_sites, double epsilon, const PulseProgram& program, int levels,
           const std::string& boundary) {
            return pure_mixed_equivalence(m_sites, epsilon, program, SchemeMode::from_levels(levels),
                                          boundary == "open" ? Boundary::Open : Boundary::Periodic);
        },
        py::arg("m"), py::arg("epsilon"), py::arg("program"), py::arg("levels") = 6,
        py::arg("boundary") = "periodic");
}
