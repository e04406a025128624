#include "qzef/sparse_state.hpp"

#include <cmath>

namespace qzef {

void check_bits(const std::string& bits) {
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring may contain only 0 and 1: " + bits);
        }
    }
}

SparseState SparseState::basis(const std::string& bits) {
    check_bits(bits);
    amp_map amps;
    amps[bits] = cplx{1.0, 0.0};
    return SparseState(static_cast<int>(bits.size()), std::move(amps), true);
}

SparseState SparseState::from_terms(int num_qubits, const amp_map& terms) {
    amp_map amps;
    for (const auto& [bits, amp] : terms) {
        check_bits(bits);
        if (static_cast<int>(bits.size()) != num_qubits) {
            throw std::invalid_argument("term length does not match register size");
        }
        if (std::abs(amp) > kPruneThreshold) amps[bits] = amp;
    }
    SparseState s(num_qubits, std::move(amps), true);
    double n2 = s.norm_squared();
    if (n2 < kPruneThreshold) throw std::invalid_argument("cannot normalize a zero state");
    s.normalize();
    return s;
}

SparseState SparseState::raw(int num_qubits, amp_map terms) {
    for (const auto& [bits, amp] : terms) {
        (void)amp;
        check_bits(bits);
        if (static_cast<int>(bits.size()) != num_qubits) {
            throw std::invalid_argument("term length does not match register size");
        }
    }
    return SparseState(num_qubits, std::move(terms), false);
}

cplx SparseState::amplitude(const std::string& bits) const {
    auto it = amps_.find(bits);
    return it == amps_.end() ? cplx{0.0, 0.0} : it->second;
}

double SparseState::norm_squared() const {
    double n2 = 0.0;
    for (const auto& [bits, amp] : amps_) {
        (void)bits;
        n2 += std::norm(amp);
    }
    return n2;
}

void SparseState::normalize() {
    double n = std::sqrt(norm_squared());
    if (n < kPruneThreshold) throw std::runtime_error("cannot normalize a zero state");
    for (auto& [bits, amp] : amps_) {
        (void)bits;
        amp /= n;
    }
    prune();
    normalized_ = true;
}

void SparseState::prune(double threshold) {
    for (auto it = amps_.begin(); it != amps_.end();) {
        if (std::abs(it->second) < threshold) {
            it = amps_.erase(it);
        } else {
            ++it;
        }
    }
}

SparseState SparseState::scaled(cplx factor) const {
    amp_map amps;
    for (const auto& [bits, amp] : amps_) amps[bits] = amp * factor;
    SparseState s(num_qubits_, std::move(amps), false);
    s.prune();
    return s;
}

void SparseState::add_term(const std::string& bits, cplx amp) {
    check_bits(bits);
    if (static_cast<int>(bits.size()) != num_qubits_) {
        throw std::invalid_argument("term length does not match register size");
    }
    amps_[bits] += amp;
    normalized_ = false;
}

SparseState basis_state(const std::string& bits) { return SparseState::basis(bits); }

cplx inner(const SparseState& a, const SparseState& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner: register sizes differ");
    }
    const auto& small = a.support_size() <= b.support_size() ? a : b;
    const auto& large = a.support_size() <= b.support_size() ? b : a;
    bool small_is_a = &small == &a;
    cplx result{0.0, 0.0};
    for (const auto& [bits, amp] : small.amplitudes()) {
        cplx other = large.amplitude(bits);
        if (small_is_a) {
            result += std::conj(amp) * other;
        } else {
            result += std::conj(other) * amp;
        }
    }
    return result;
}

SparseState tensor(const SparseState& a, const SparseState& b) {
    SparseState::amp_map amps;
    for (const auto& [abits, aamp] : a.amplitudes()) {
        for (const auto& [bbits, bamp] : b.amplitudes()) {
            amps[abits + bbits] = aamp * bamp;
        }
    }
    SparseState s = SparseState::raw(a.num_qubits() + b.num_qubits(), std::move(amps));
    if (a.is_normalized() && b.is_normalized()) s.normalize();
    return s;
}

SparseState add(const SparseState& a, const SparseState& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("add: register sizes differ");
    }
    SparseState::amp_map amps = a.amplitudes();
    for (const auto& [bits, amp] : b.amplitudes()) amps[bits] += amp;
    SparseState s = SparseState::raw(a.num_qubits(), std::move(amps));
    s.prune();
    return s;
}

}  // namespace qzef
