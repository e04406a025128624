#pragma once

#include <cstdint>
#include <functional>

#include "qzef/codes.hpp"

namespace qzef {

// Configuration of the reversible condensation machine: N input registers of
// l_max bits, an output tape, a delay counter and the pointer variables.
struct MachineState {
    std::vector<std::vector<uint8_t>> registers;
    std::vector<uint8_t> tape;
    long counter = 0;
    int reg_ptr = 0;
    std::vector<long> qubit_ptr;
    long tape_ptr = 0;
    long clock = 0;

    bool ancillas_zero() const;
    std::string tape_string() const;
};

struct TraceEntry {
    long clock;
    std::string line;
    int reg_ptr;
    long tape_ptr;
    long counter;
};

struct MachineRun {
    MachineState state;
    std::vector<TraceEntry> trace;
    long deadline = 0;
    bool ok = false;
    std::string error;
};

// Cycle cost of the copy phase for inputs with total payload length L:
// one cycle per executed line, including the codeword-guard evaluations.
long copy_phase_cycles(int n_registers, int total_length);

// Smallest valid delay deadline for the given code and register count.  The
// delay loop needs at least one idle cycle past the worst-case copy phase.
long default_deadline(const ClassicalCode& code, int n_registers);

// Runs the full condensation program (copy, delay to the deadline, mirrored
// uncopy) on classical codeword inputs.  deadline = 0 picks the default.
// Halts at exactly 2 * deadline cycles with all ancillas returned to zero.
MachineRun run_condense_program(const ClassicalCode& code,
                                const std::vector<std::string>& inputs, long deadline = 0);

struct MachineReport {
    bool ok = false;
    int runs = 0;
    std::string detail;
};

// Exhaustively checks that distinct codeword tuples produce distinct tapes.
MachineReport check_reversibility(const ClassicalCode& code, int n_registers, long deadline = 0,
                                  int max_runs = 4096);

// Exhaustively checks that every tuple halts at the same clock with the same
// (all-zero) ancilla configuration.
MachineReport check_input_independence(const ClassicalCode& code, int n_registers,
                                       long deadline = 0, int max_runs = 4096);

// Trace export, one cycle per line.
std::string format_trace(const MachineRun& run);

// Coherent branch operator U = (|0><1| + |1><0|) (x) Pi + 1 (x) Pi_perp.
// `projector` acts on the 1-based qubits in `subsystem` (ascending order);
// the switch qubit must be disjoint from the subsystem.
SparseState branch_operator_apply(const Eigen::MatrixXcd& projector,
                                  const std::vector<int>& subsystem, int switch_qubit,
                                  const SparseState& state);

// V = |0><0| (x) V0 + |1><1| (x) V1 with the switch qubit as control.
SparseState controlled_branch(const Eigen::MatrixXcd& v0, const Eigen::MatrixXcd& v1,
                              const std::vector<int>& subsystem, int switch_qubit,
                              const SparseState& state);

// Applies a dense operator to the given 1-based qubits of a sparse state.
SparseState apply_subsystem_operator(const Eigen::MatrixXcd& op, const std::vector<int>& subsystem,
                                     const SparseState& state);

}  // namespace qzef
