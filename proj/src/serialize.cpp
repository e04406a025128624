#include "qzef/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace qzef {

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string write_sparse_state(const SparseState& state) {
    std::ostringstream out;
    for (const auto& [bits, amp] : state.amplitudes()) {
        out << bits << ' ' << format_double(amp.real()) << ' ' << format_double(amp.imag())
            << '\n';
    }
    return out.str();
}

namespace {

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        line = line.substr(start, end - start + 1);
        return true;
    }
    return false;
}

}  // namespace

SparseState read_sparse_state(std::istream& in) {
    SparseState::amp_map amps;
    int num_qubits = -1;
    std::string line;
    while (next_content_line(in, line)) {
        std::istringstream fields(line);
        std::string bits;
        double re = 0.0, im = 0.0;
        if (!(fields >> bits >> re >> im)) {
            throw std::runtime_error("malformed sparse-state line: " + line);
        }
        check_bits(bits);
        if (num_qubits < 0) num_qubits = static_cast<int>(bits.size());
        if (static_cast<int>(bits.size()) != num_qubits) {
            throw std::runtime_error("inconsistent bitstring lengths in state file");
        }
        amps[bits] = cplx{re, im};
    }
    if (num_qubits < 0) throw std::runtime_error("empty state file");
    return SparseState::from_terms(num_qubits, amps);
}

SparseState read_sparse_state_string(const std::string& text) {
    std::istringstream in(text);
    return read_sparse_state(in);
}

std::string write_quantum_code(const QuantumCode& code) {
    std::ostringstream out;
    out << "lmax " << code.l_max << '\n';
    for (int l = 1; l <= code.l_max; ++l) {
        for (const auto& payload : code.sectors[static_cast<std::size_t>(l - 1)]) {
            out << "state " << l << '\n';
            out << write_sparse_state(payload);
            out << "end\n";
        }
    }
    return out.str();
}

QuantumCode read_quantum_code(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) throw std::runtime_error("empty code file");
    std::istringstream header(line);
    std::string tag;
    int l_max = 0;
    if (!(header >> tag >> l_max) || tag != "lmax" || l_max < 1) {
        throw std::runtime_error("expected 'lmax L' header, got: " + line);
    }
    std::vector<std::vector<SparseState>> sectors(static_cast<std::size_t>(l_max));
    while (next_content_line(in, line)) {
        std::istringstream fields(line);
        int l = 0;
        if (!(fields >> tag >> l) || tag != "state" || l < 1 || l > l_max) {
            throw std::runtime_error("expected 'state l' block, got: " + line);
        }
        std::ostringstream block;
        bool closed = false;
        while (next_content_line(in, line)) {
            if (line == "end") {
                closed = true;
                break;
            }
            block << line << '\n';
        }
        if (!closed) throw std::runtime_error("unterminated state block");
        SparseState payload = read_sparse_state_string(block.str());
        if (payload.num_qubits() != l) {
            throw std::runtime_error("payload register size does not match sector length");
        }
        sectors[static_cast<std::size_t>(l - 1)].push_back(std::move(payload));
    }
    QuantumCode code(l_max, std::move(sectors));
    code.validate();
    return code;
}

QuantumCode read_quantum_code_string(const std::string& text) {
    std::istringstream in(text);
    return read_quantum_code(in);
}

}  // namespace qzef
