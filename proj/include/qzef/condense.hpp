#pragma once

#include <map>
#include <optional>

#include "qzef/codes.hpp"
#include "qzef/dyadic.hpp"

namespace qzef {

// N zef codewords packed into one zef string of N * l_max qubits by
// concatenating payloads in the length eigenbasis.
struct CondensedString {
    SparseState state;
    QuantumCode code;
    int n_words = 0;
    // Exact probability of each total length L, from the squared expansion
    // coefficients of the input tuple.
    std::map<int, double> length_weights;
    // Nonzero for non-prefix-free codes, where concatenation fails to be an
    // isometry.
    double norm_deviation = 0.0;
};

// Expansion of a word in the code's zef eigenbasis: (length, basis index,
// coefficient) triples.  Throws if the word leaks outside the zef subspace.
struct SectorComponent {
    int length;
    int index;
    cplx coeff;
};
std::vector<SectorComponent> expand_in_code(const QuantumCode& code, const SparseState& word,
                                            double support_tol = 1e-8);

CondensedString simple_condense(const QuantumCode& code, const std::vector<SparseState>& words);

// Inverse of simple_condense for prefix-free codes; recovers the input words
// up to global phase.  Throws if the state lies outside the image of
// condensation or is not a product of codewords.
std::vector<SparseState> decondense(const CondensedString& cs);

struct IsometryReport {
    bool ok = false;
    double max_deviation = 0.0;
    int n_products = 0;
    std::string worst_pair;
};

// Gram matrix of all condensed basis-tuple products vs identity.
IsometryReport isometry_check(const QuantumCode& code, int n_words,
                              double tol = kNormTol, int max_products = 4096);

double condensed_length_expectation(const CondensedString& cs);

// Length distribution of a single word expanded in the code basis.
LengthDistribution word_length_distribution(const QuantumCode& code, const SparseState& word);

struct DimensionCountReport {
    bool ok = false;
    std::vector<int> violated_lengths;  // values of L where the 2^L bound fails
    bool kraft_power_ok = false;        // (sum 2^-l d_l)^N <= N l_max when K <= 1
};

// Convolution bound sum_{l_1+...+l_N = L} d_{l_1}...d_{l_N} <= 2^L.
DimensionCountReport dimension_count_check(const QuantumCode& code, int n_words);

}  // namespace qzef
