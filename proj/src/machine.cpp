#include "qzef/machine.hpp"
#include "qzef/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace qzef {

bool MachineState::ancillas_zero() const {
    for (const auto& reg : registers) {
        for (uint8_t b : reg) {
            if (b) return false;
        }
    }
    for (long q : qubit_ptr) {
        if (q != 0) return false;
    }
    return counter == 0 && reg_ptr == 0 && tape_ptr == 0;
}

std::string MachineState::tape_string() const {
    std::string s;
    s.reserve(tape.size());
    for (uint8_t b : tape) s.push_back(static_cast<char>('0' + b));
    return s;
}

long copy_phase_cycles(int n_registers, int total_length) {
    return 1 + 3L * n_registers + 4L * total_length;
}

long default_deadline(const ClassicalCode& code, int n_registers) {
    return copy_phase_cycles(n_registers, n_registers * code.max_length()) + 1;
}

// Cost model: every pseudocode line costs one cycle, including the
// codeword-guard evaluations of the copy and uncopy loops.  The delay loops
// idle at one cycle per counter step; their boundary conditions compare
// against the classical system clock and cost nothing.
MachineRun run_condense_program(const ClassicalCode& code,
                                const std::vector<std::string>& inputs, long deadline) {
    int n = static_cast<int>(inputs.size());
    int l_max = code.max_length();
    if (deadline == 0) deadline = default_deadline(code, n);

    MachineRun run;
    run.deadline = deadline;
    MachineState& st = run.state;
    st.registers.resize(static_cast<std::size_t>(n));
    st.qubit_ptr.assign(static_cast<std::size_t>(n), 0);
    st.tape.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(l_max), 0);
    for (int i = 0; i < n; ++i) {
        const std::string& w = inputs[static_cast<std::size_t>(i)];
        check_bits(w);
        if (static_cast<int>(w.size()) > l_max) {
            run.error = "input longer than register";
            return run;
        }
        auto& reg = st.registers[static_cast<std::size_t>(i)];
        reg.assign(static_cast<std::size_t>(l_max), 0);
        for (std::size_t b = 0; b < w.size(); ++b) reg[b] = static_cast<uint8_t>(w[b] - '0');
    }

    std::set<std::string> codeword_set(code.codewords.begin(), code.codewords.end());
    auto step = [&](const char* line) {
        ++st.clock;
        run.trace.push_back({st.clock, line, st.reg_ptr, st.tape_ptr, st.counter});
    };
    auto prefix_is_codeword = [&](int r, long q) {
        std::string prefix;
        const auto& reg = st.registers[static_cast<std::size_t>(r - 1)];
        for (long b = 0; b < q; ++b) prefix.push_back(static_cast<char>('0' + reg[static_cast<std::size_t>(b)]));
        return codeword_set.count(prefix) > 0;
    };

    // Copy phase.
    step("enter r=0");
    for (;;) {
        ++st.reg_ptr;
        step("r <- r+1");
        int r = st.reg_ptr;
        long& q = st.qubit_ptr[static_cast<std::size_t>(r - 1)];
        step("enter q_r=0");
        for (;;) {
            if (q >= l_max) {
                run.error = "register " + std::to_string(r) +
                            " holds no codeword prefix; guard never fires";
                return run;
            }
            ++q;
            step("q_r <- q_r+1");
            ++st.tape_ptr;
            step("p <- p+1");
            st.tape[static_cast<std::size_t>(st.tape_ptr - 1)] ^=
                st.registers[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(q - 1)];
            step("T_p <- T_p xor R_rq");
            step("exit codeword guard");
            if (prefix_is_codeword(r, q)) break;
        }
        step("exit r=N");
        if (st.reg_ptr == n) break;
        if (st.clock >= deadline) {
            run.error = "deadline too small for copy phase";
            return run;
        }
    }

    // Delay until the fixed time D.
    if (st.clock >= deadline) {
        run.error = "deadline too small for copy phase";
        return run;
    }
    while (st.clock < deadline) {
        ++st.counter;
        step("c <- c+1");
    }

    // Reverse delay.
    while (st.counter > 0) {
        --st.counter;
        step("c <- c-1");
    }

    // Uncopy phase: the mirror image of the copy phase.
    step("enter r=N");
    for (;;) {
        int r = st.reg_ptr;
        long& q = st.qubit_ptr[static_cast<std::size_t>(r - 1)];
        step("enter codeword guard");
        for (;;) {
            st.registers[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(q - 1)] ^=
                st.tape[static_cast<std::size_t>(st.tape_ptr - 1)];
            step("R_rq <- T_p xor R_rq");
            --st.tape_ptr;
            step("p <- p-1");
            --q;
            step("q_r <- q_r-1");
            step("exit q_r=0");
            if (q == 0) break;
        }
        --st.reg_ptr;
        step("r <- r-1");
        step("exit r=0");
        if (st.reg_ptr == 0) break;
    }

    if (st.clock != 2 * deadline) {
        run.error = "halted at clock " + std::to_string(st.clock) + ", expected " +
                    std::to_string(2 * deadline);
        return run;
    }
    run.ok = true;
    return run;
}

namespace {

// All N-tuples of codewords, in lexicographic tuple order.
std::vector<std::vector<std::string>> codeword_tuples(const ClassicalCode& code, int n,
                                                      int max_runs) {
    double count = std::pow(static_cast<double>(code.codewords.size()), n);
    if (count > static_cast<double>(max_runs)) {
        throw ResourceLimitError("codeword tuple count exceeds limit");
    }
    std::vector<std::vector<std::string>> tuples;
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    bool done = (n == 0);
    if (n == 0) tuples.push_back({});
    while (!done) {
        std::vector<std::string> tuple;
        for (std::size_t w = 0; w < pick.size(); ++w) tuple.push_back(code.codewords[pick[w]]);
        tuples.push_back(std::move(tuple));
        for (std::size_t w = 0;; ++w) {
            if (w == pick.size()) {
                done = true;
                break;
            }
            if (++pick[w] < code.codewords.size()) break;
            pick[w] = 0;
        }
    }
    return tuples;
}

}  // namespace

MachineReport check_reversibility(const ClassicalCode& code, int n_registers, long deadline,
                                  int max_runs) {
    MachineReport report;
    std::map<std::string, std::vector<std::string>> seen;
    for (const auto& tuple : codeword_tuples(code, n_registers, max_runs)) {
        MachineRun run = run_condense_program(code, tuple, deadline);
        ++report.runs;
        if (!run.ok) {
            report.detail = "run failed: " + run.error;
            return report;
        }
        std::string tape = run.state.tape_string();
        auto [it, inserted] = seen.emplace(tape, tuple);
        if (!inserted) {
            report.detail = "tape collision on " + tape;
            return report;
        }
    }
    report.ok = true;
    report.detail = std::to_string(report.runs) + " distinct tapes";
    return report;
}

MachineReport check_input_independence(const ClassicalCode& code, int n_registers, long deadline,
                                       int max_runs) {
    MachineReport report;
    long halt_clock = -1;
    for (const auto& tuple : codeword_tuples(code, n_registers, max_runs)) {
        MachineRun run = run_condense_program(code, tuple, deadline);
        ++report.runs;
        if (!run.ok) {
            report.detail = "run failed: " + run.error;
            return report;
        }
        if (!run.state.ancillas_zero()) {
            report.detail = "ancillas not reset";
            return report;
        }
        if (halt_clock < 0) halt_clock = run.state.clock;
        if (run.state.clock != halt_clock) {
            report.detail = "halting time differs between inputs";
            return report;
        }
    }
    report.ok = true;
    report.detail = "all runs halt at clock " + std::to_string(halt_clock);
    return report;
}

std::string format_trace(const MachineRun& run) {
    std::ostringstream out;
    for (const auto& e : run.trace) {
        out << e.clock << ' ' << e.line << " r=" << e.reg_ptr << " p=" << e.tape_ptr
            << " c=" << e.counter << '\n';
    }
    return out.str();
}

SparseState apply_subsystem_operator(const Eigen::MatrixXcd& op, const std::vector<int>& subsystem,
                                     const SparseState& state) {
    int k = static_cast<int>(subsystem.size());
    check_dense_limit(k);
    if (op.rows() != (Eigen::Index(1) << k) || op.cols() != op.rows()) {
        throw std::invalid_argument("operator dimension does not match subsystem");
    }
    for (int q : subsystem) {
        if (q < 1 || q > state.num_qubits()) {
            throw std::invalid_argument("subsystem qubit out of range");
        }
    }

    // Group support strings by the off-subsystem bits and apply the operator
    // densely within each group.
    std::map<std::string, Eigen::VectorXcd> groups;
    for (const auto& [bits, amp] : state.amplitudes()) {
        std::string sub;
        for (int q : subsystem) sub.push_back(bits[static_cast<std::size_t>(q - 1)]);
        std::string rest = bits;
        for (int q : subsystem) rest[static_cast<std::size_t>(q - 1)] = '*';
        auto [it, inserted] = groups.emplace(rest, Eigen::VectorXcd::Zero(op.rows()));
        it->second(static_cast<Eigen::Index>(bits_to_index(sub))) += amp;
    }

    SparseState::amp_map out;
    for (const auto& [rest, vec] : groups) {
        Eigen::VectorXcd result = op * vec;
        for (Eigen::Index i = 0; i < result.size(); ++i) {
            if (std::abs(result(i)) < kPruneThreshold) continue;
            std::string sub = index_to_bits(static_cast<std::size_t>(i), k);
            std::string bits = rest;
            for (int s = 0; s < k; ++s) {
                bits[static_cast<std::size_t>(subsystem[static_cast<std::size_t>(s)] - 1)] = sub[static_cast<std::size_t>(s)];
            }
            out[bits] += result(static_cast<Eigen::Index>(i));
        }
    }
    SparseState s = SparseState::raw(state.num_qubits(), std::move(out));
    s.prune();
    return s;
}

SparseState branch_operator_apply(const Eigen::MatrixXcd& projector,
                                  const std::vector<int>& subsystem, int switch_qubit,
                                  const SparseState& state) {
    for (int q : subsystem) {
        if (q == switch_qubit) {
            throw std::invalid_argument("switch qubit overlaps the condition subsystem");
        }
    }
    if (switch_qubit < 1 || switch_qubit > state.num_qubits()) {
        throw std::invalid_argument("switch qubit out of range");
    }
    SparseState projected = apply_subsystem_operator(projector, subsystem, state);
    SparseState complement = add(state, projected.scaled(cplx{-1.0, 0.0}));
    // Flip the switch on the projected component.
    SparseState::amp_map flipped;
    for (const auto& [bits, amp] : projected.amplitudes()) {
        std::string b = bits;
        std::size_t pos = static_cast<std::size_t>(switch_qubit - 1);
        b[pos] = (b[pos] == '0') ? '1' : '0';
        flipped[b] = amp;
    }
    SparseState result = add(SparseState::raw(state.num_qubits(), std::move(flipped)), complement);
    if (std::abs(result.norm_squared() - state.norm_squared()) < kNormTol &&
        state.is_normalized()) {
        result.normalize();
    }
    return result;
}

SparseState controlled_branch(const Eigen::MatrixXcd& v0, const Eigen::MatrixXcd& v1,
                              const std::vector<int>& subsystem, int switch_qubit,
                              const SparseState& state) {
    auto check_unitary = [](const Eigen::MatrixXcd& v) {
        if (v.rows() != v.cols()) throw std::invalid_argument("branch operator not square");
        Eigen::MatrixXcd err = v.adjoint() * v - Eigen::MatrixXcd::Identity(v.rows(), v.cols());
        if (err.cwiseAbs().maxCoeff() > kNormTol) {
            throw std::invalid_argument("branch operator is not unitary");
        }
    };
    check_unitary(v0);
    check_unitary(v1);
    if (v0.rows() != v1.rows()) throw std::invalid_argument("branch operators differ in size");
    for (int q : subsystem) {
        if (q == switch_qubit) {
            throw std::invalid_argument("switch qubit overlaps the work subsystem");
        }
    }

    std::size_t pos = static_cast<std::size_t>(switch_qubit - 1);
    SparseState::amp_map zero_part, one_part;
    for (const auto& [bits, amp] : state.amplitudes()) {
        (bits[pos] == '0' ? zero_part : one_part)[bits] = amp;
    }
    SparseState part0 = apply_subsystem_operator(v0, subsystem,
                                                 SparseState::raw(state.num_qubits(), std::move(zero_part)));
    SparseState part1 = apply_subsystem_operator(v1, subsystem,
                                                 SparseState::raw(state.num_qubits(), std::move(one_part)));
    SparseState result = add(part0, part1);
    if (state.is_normalized()) result.normalize();
    return result;
}

}  // namespace qzef
