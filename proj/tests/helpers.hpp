#pragma once

#include <random>

#include "qzef/codes.hpp"
#include "qzef/compress.hpp"

namespace qzef::test {

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

inline ClassicalCode paper_code() { return ClassicalCode({"0", "10", "110", "111"}); }

inline QuantumCode paper_quantum_code() { return lift_classical(paper_code(), 3); }

// Probabilities (1/2, 1/4, 1/8, 1/8) on the paper code's basis codewords.
inline Ensemble dyadic_ensemble() {
    QuantumCode code = paper_quantum_code();
    auto basis = code.zef_basis();
    std::vector<double> probs = {0.5, 0.25, 0.125, 0.125};
    std::vector<std::pair<double, SparseState>> entries;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        entries.emplace_back(probs[i], basis[i].second);
    }
    return Ensemble(std::move(code), std::move(entries));
}

inline Ensemble uniform_ensemble() {
    QuantumCode code = paper_quantum_code();
    auto basis = code.zef_basis();
    std::vector<std::pair<double, SparseState>> entries;
    for (const auto& [l, zef] : basis) {
        (void)l;
        entries.emplace_back(0.25, zef);
    }
    return Ensemble(std::move(code), std::move(entries));
}

inline std::vector<double> random_distribution(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> p(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& x : p) {
        x = u(rng);
        sum += x;
    }
    for (double& x : p) x /= sum;
    return p;
}

inline SparseState random_state(std::mt19937_64& rng, int num_qubits) {
    std::normal_distribution<double> g(0.0, 1.0);
    SparseState::amp_map amps;
    std::size_t dim = std::size_t(1) << num_qubits;
    for (std::size_t i = 0; i < dim; ++i) {
        std::string bits(static_cast<std::size_t>(num_qubits), '0');
        for (int b = 0; b < num_qubits; ++b) {
            if (i & (std::size_t(1) << (num_qubits - 1 - b))) bits[static_cast<std::size_t>(b)] = '1';
        }
        amps[bits] = cplx{g(rng), g(rng)};
    }
    return SparseState::from_terms(num_qubits, amps);
}

// Random normalized superposition of the code's zef basis codewords.
inline SparseState random_codeword(std::mt19937_64& rng, const QuantumCode& code) {
    std::normal_distribution<double> g(0.0, 1.0);
    auto basis = code.zef_basis();
    SparseState acc = SparseState::raw(code.l_max, {});
    for (const auto& [l, zef] : basis) {
        (void)l;
        acc = add(acc, zef.scaled(cplx{g(rng), g(rng)}));
    }
    acc.normalize();
    return acc;
}

// Random density matrix of the given dimension (mixture of Gaussian vectors).
inline Eigen::MatrixXcd random_density(std::mt19937_64& rng, Eigen::Index dim, int rank = 3) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < rank; ++r) {
        Eigen::VectorXcd v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx{g(rng), g(rng)};
        m += v * v.adjoint();
    }
    return m / m.trace().real();
}

// Random lengths multiset with Kraft sum <= 1, for kraft_assign.
inline std::vector<int> random_kraft_lengths(std::mt19937_64& rng, int max_len = 4) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::vector<int> lengths;
    double budget = 1.0;
    int count = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int i = 0; i < count; ++i) {
        int l = len(rng);
        double cost = std::ldexp(1.0, -l);
        if (cost > budget + 1e-15) continue;
        budget -= cost;
        lengths.push_back(l);
    }
    if (lengths.empty()) lengths.push_back(1);
    return lengths;
}

}  // namespace qzef::test
