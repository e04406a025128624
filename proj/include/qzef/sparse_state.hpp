#pragma once

#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qzef {

using cplx = std::complex<double>;

inline constexpr double kPruneThreshold = 1e-14;
inline constexpr double kNormTol = 1e-10;

// Pure state of a qubit register, stored as a sparse map from bitstrings to
// amplitudes.  Qubits are 1-based and big-endian: qubit 1 is the leftmost
// character of the bitstring.  Constructors produce normalized states;
// arithmetic intermediates built through `raw` may be unnormalized and are
// flagged as such.
class SparseState {
public:
    using amp_map = std::map<std::string, cplx>;

    SparseState() : num_qubits_(0) { amps_[""] = cplx{1.0, 0.0}; }

    // Computational basis state |bits>.
    static SparseState basis(const std::string& bits);

    // Normalized state from explicit terms; throws if the terms have zero norm.
    static SparseState from_terms(int num_qubits, const amp_map& terms);

    // Unnormalized container for arithmetic intermediates.
    static SparseState raw(int num_qubits, amp_map terms);

    int num_qubits() const { return num_qubits_; }
    const amp_map& amplitudes() const { return amps_; }
    std::size_t support_size() const { return amps_.size(); }
    bool is_normalized() const { return normalized_; }

    cplx amplitude(const std::string& bits) const;

    double norm_squared() const;

    // Scales to unit norm in place and drops sub-threshold amplitudes.
    void normalize();

    void prune(double threshold = kPruneThreshold);

    SparseState scaled(cplx factor) const;

    void add_term(const std::string& bits, cplx amp);

private:
    SparseState(int num_qubits, amp_map amps, bool normalized)
        : num_qubits_(num_qubits), amps_(std::move(amps)), normalized_(normalized) {}

    int num_qubits_;
    amp_map amps_;
    bool normalized_ = true;
};

SparseState basis_state(const std::string& bits);

cplx inner(const SparseState& a, const SparseState& b);

SparseState tensor(const SparseState& a, const SparseState& b);

// a + b, unnormalized.
SparseState add(const SparseState& a, const SparseState& b);

void check_bits(const std::string& bits);

}  // namespace qzef
