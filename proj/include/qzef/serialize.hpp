#pragma once

#include <iosfwd>
#include <string>

#include "qzef/codes.hpp"

namespace qzef {

// One support element per line, "bitstring re im", sorted lexicographically
// by bitstring for byte-stable diffs.
std::string write_sparse_state(const SparseState& state);
SparseState read_sparse_state(std::istream& in);
SparseState read_sparse_state_string(const std::string& text);

// Code table: "lmax L" header, then one "state l" block per basis payload
// with its amplitude lines, terminated by "end".
std::string write_quantum_code(const QuantumCode& code);
QuantumCode read_quantum_code(std::istream& in);
QuantumCode read_quantum_code_string(const std::string& text);

// Fixed-point free formatting: 12 significant digits, '.' separator.
std::string format_double(double value);

}  // namespace qzef
