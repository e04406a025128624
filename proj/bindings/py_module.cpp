// Python bindings for the main operations: code construction, Kraft checks,
// condensation, the reversible machine, and the compression experiments.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qzef/compress.hpp"
#include "qzef/errors.hpp"
#include "qzef/machine.hpp"
#include "qzef/serialize.hpp"

namespace py = pybind11;
using namespace qzef;

PYBIND11_MODULE(_core, m) {
    m.doc() = "indeterminate-length quantum code toolkit";

    py::register_exception<ResourceLimitError>(m, "ResourceLimitError");

    py::class_<SparseState>(m, "SparseState")
        .def_static("basis", &SparseState::basis)
        .def_static("from_terms", &SparseState::from_terms)
        .def_property_readonly("num_qubits", &SparseState::num_qubits)
        .def_property_readonly("amplitudes",
                               [](const SparseState& s) { return s.amplitudes(); })
        .def("norm_squared", &SparseState::norm_squared)
        .def("__repr__", [](const SparseState& s) {
            return "<SparseState " + std::to_string(s.num_qubits()) + " qubits, " +
                   std::to_string(s.support_size()) + " terms>";
        });

    m.def("inner", &inner);
    m.def("tensor", &tensor);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_static("from_pure", &DensityMatrix::from_pure)
        .def_readonly("num_qubits", &DensityMatrix::num_qubits)
        .def_readonly("mat", &DensityMatrix::mat);

    m.def("partial_trace",
          py::overload_cast<const SparseState&, const std::set<int>&>(&partial_trace));
    m.def("fidelity_pure_mixed", &fidelity_pure_mixed);
    m.def("uhlmann_fidelity", &uhlmann_fidelity);
    m.def("von_neumann_entropy", &von_neumann_entropy);
    m.def("relative_entropy", &relative_entropy, py::arg("rho"), py::arg("omega"),
          py::arg("support_tol") = 1e-9);

    py::class_<ClassicalCode>(m, "ClassicalCode")
        .def(py::init<std::vector<std::string>>())
        .def_readonly("codewords", &ClassicalCode::codewords)
        .def("max_length", &ClassicalCode::max_length);

    m.def("kraft_sum_classical", &kraft_sum_classical);
    m.def("is_prefix_free_classical", &is_prefix_free_classical);
    m.def("huffman_from_probs", &huffman_from_probs);
    m.def("shannon_fano_lengths", &shannon_fano_lengths);
    m.def("kraft_assign", &kraft_assign);

    py::class_<QuantumCode>(m, "QuantumCode")
        .def_readonly("l_max", &QuantumCode::l_max)
        .def("sector_dims", &QuantumCode::sector_dims)
        .def("zef", &QuantumCode::zef)
        .def("zef_basis", &QuantumCode::zef_basis);

    m.def(
        "lift_classical",
        [](const ClassicalCode& code, int l_max) {
            return lift_classical(code, l_max > 0 ? l_max : code.max_length());
        },
        py::arg("code"), py::arg("l_max") = 0);
    m.def("quantum_kraft_sum", &quantum_kraft_sum);
    m.def("is_prefix_free_quantum", &is_prefix_free_quantum, py::arg("code"),
          py::arg("tol") = kNormTol);
    m.def("omega_operator", &omega_operator);
    m.def("avg_length", &avg_length, py::arg("rho"), py::arg("code"),
          py::arg("support_tol") = 1e-8);

    py::class_<CondensedString>(m, "CondensedString")
        .def_readonly("state", &CondensedString::state)
        .def_readonly("n_words", &CondensedString::n_words)
        .def_readonly("length_weights", &CondensedString::length_weights)
        .def_readonly("norm_deviation", &CondensedString::norm_deviation);

    m.def("simple_condense", &simple_condense);
    m.def("decondense", &decondense);

    py::class_<IsometryReport>(m, "IsometryReport")
        .def_readonly("ok", &IsometryReport::ok)
        .def_readonly("max_deviation", &IsometryReport::max_deviation)
        .def_readonly("n_products", &IsometryReport::n_products);
    m.def("isometry_check", &isometry_check, py::arg("code"), py::arg("n_words"),
          py::arg("tol") = kNormTol, py::arg("max_products") = 4096);

    py::class_<MachineRun>(m, "MachineRun")
        .def_readonly("ok", &MachineRun::ok)
        .def_readonly("deadline", &MachineRun::deadline)
        .def_readonly("error", &MachineRun::error)
        .def_property_readonly("clock", [](const MachineRun& r) { return r.state.clock; })
        .def_property_readonly("tape", [](const MachineRun& r) { return r.state.tape_string(); });
    m.def("run_condense_program", &run_condense_program, py::arg("code"), py::arg("inputs"),
          py::arg("deadline") = 0);

    py::class_<Ensemble>(m, "Ensemble")
        .def(py::init<QuantumCode, std::vector<std::pair<double, SparseState>>>())
        .def("average_length", &Ensemble::average_length);
    m.def("rho_of", &rho_of);
    m.def("truncation_fidelity", &truncation_fidelity);
    m.def("tail_probability", &tail_probability);

    py::class_<LengthIdentityReport>(m, "LengthIdentityReport")
        .def_readonly("avg_len", &LengthIdentityReport::avg_len)
        .def_readonly("entropy", &LengthIdentityReport::entropy)
        .def_readonly("rel_entropy", &LengthIdentityReport::rel_entropy)
        .def_readonly("log_k", &LengthIdentityReport::log_k)
        .def_readonly("residual", &LengthIdentityReport::residual)
        .def_readonly("holds", &LengthIdentityReport::holds);
    m.def("length_identity", &length_identity, py::arg("ensemble"), py::arg("tol") = 1e-9);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("n_words", &SweepRow::n_words)
        .def_readonly("ell", &SweepRow::ell)
        .def_readonly("eta_exact", &SweepRow::eta_exact)
        .def_readonly("avg_fidelity", &SweepRow::avg_fidelity)
        .def_readonly("stderr_est", &SweepRow::stderr_est)
        .def_readonly("bound_lower", &SweepRow::bound_lower)
        .def_readonly("bound_upper", &SweepRow::bound_upper);
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("n_words", &ExperimentConfig::n_words)
        .def_readwrite("ells", &ExperimentConfig::ells)
        .def_readwrite("samples", &ExperimentConfig::samples)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("exact", &ExperimentConfig::exact);
    m.def("sufficiency_experiment", &sufficiency_experiment);

    m.def("write_sparse_state", &write_sparse_state);
    m.def("read_sparse_state", &read_sparse_state_string);
}
