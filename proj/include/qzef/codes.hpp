#pragma once

#include <utility>
#include <vector>

#include "qzef/density_matrix.hpp"
#include "qzef/sparse_state.hpp"

namespace qzef {

// Classical variable-length binary code: a list of distinct codeword
// bitstrings.
struct ClassicalCode {
    std::vector<std::string> codewords;

    ClassicalCode() = default;
    explicit ClassicalCode(std::vector<std::string> words);

    int max_length() const;
};

double kraft_sum_classical(const ClassicalCode& code);
bool is_prefix_free_classical(const ClassicalCode& code);

// Huffman code for the given distribution, with canonical codeword
// assignment; minimizes average length among prefix-free codes.
ClassicalCode huffman_from_probs(const std::vector<double>& probs);

// l_k = max(1, ceil(-log2 p_k)).
std::vector<int> shannon_fano_lengths(const std::vector<double>& probs);

// Canonical prefix-free code realizing exactly these lengths; codewords are
// returned in the order of the input lengths.
ClassicalCode kraft_assign(const std::vector<int>& lengths);

double average_length(const ClassicalCode& code, const std::vector<double>& probs);

// Quantum code on a register of l_max qubits.  sectors[l-1] holds an
// orthonormal list of payload states on l qubits; the zero-extended payloads
// span the eigenvalue-l eigenspace of the length observable.
struct QuantumCode {
    int l_max = 0;
    std::vector<std::vector<SparseState>> sectors;

    QuantumCode() = default;
    QuantumCode(int lmax, std::vector<std::vector<SparseState>> secs);

    std::vector<int> sector_dims() const;
    int basis_count() const;

    // Payload of the i-th basis codeword of length l.
    const SparseState& payload(int l, int i) const { return sectors[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(i)]; }

    // Zero-extended basis codeword on l_max qubits.
    SparseState zef(int l, int i) const;

    // All (length, zef state) basis pairs, in sector order.
    std::vector<std::pair<int, SparseState>> zef_basis() const;

    // Zero-extension of an arbitrary payload state of definite length.
    SparseState zef_of_payload(const SparseState& payload) const;

    // Orthonormality of the zef basis across all sectors.
    void validate(double tol = kNormTol) const;
};

// The zef basis of the lifted code is the computational payloads of the
// classical codewords.
QuantumCode lift_classical(const ClassicalCode& code, int l_max);

// Tr 2^{-Lambda} over the zef subspace.
double quantum_kraft_sum(const QuantumCode& code);

// Sector-projector criterion: for every l < l', the reduced first-l-qubit
// state of sector l' is orthogonal to the sector-l payload subspace.
bool is_prefix_free_quantum(const QuantumCode& code, double tol = kNormTol);

struct RemapResult {
    // Basis pairs (source zef codeword, image zef codeword); extends linearly
    // to the unitary V with Lambda' = V Lambda V^dagger.
    std::vector<std::pair<SparseState, SparseState>> basis_map;
    QuantumCode code;
};

// Unitary remap onto a canonical prefix-free code with the same length
// multiplicities.  Requires quantum_kraft_sum <= 1.
RemapResult remap_to_prefix_free(const QuantumCode& code);

// <l> = Tr rho Lambda; rho must be supported on the zef subspace.
double avg_length(const DensityMatrix& rho, const QuantumCode& code,
                  double support_tol = 1e-8);

// omega = 2^{-Lambda} / K on the zef subspace, as a dense operator.
DensityMatrix omega_operator(const QuantumCode& code);

// Dense length observable (for inspection and tests).
DensityMatrix length_observable(const QuantumCode& code);

}  // namespace qzef
