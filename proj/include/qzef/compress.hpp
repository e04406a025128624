#pragma once

#include <cstdint>
#include <optional>

#include "qzef/condense.hpp"

namespace qzef {

// Quantum information source: probability-weighted zef codewords of a code.
struct Ensemble {
    QuantumCode code;
    std::vector<std::pair<double, SparseState>> entries;

    Ensemble() = default;
    Ensemble(QuantumCode c, std::vector<std::pair<double, SparseState>> e);

    // Ensemble length distribution, exact in the entry probabilities.
    LengthDistribution length_distribution() const;

    double average_length() const;
};

// rho = sum_a p(a) |a><a| as a dense operator (l_max within the dense limit).
DensityMatrix rho_of(const Ensemble& ensemble);

// Truncation channel: discard all qubits past position ell, append |0>'s.
DensityMatrix truncate_and_restore(const SparseState& state, int ell);

// <phi| T_ell(phi) |phi> computed sparsely, without materializing the dense
// output; exact for any register size.
double truncation_fidelity(const SparseState& state, int ell);

// P(Lambda > ell) for a single codeword of the code.
double tail_probability(const SparseState& state, const QuantumCode& code, int ell);

struct SufficiencyCheck {
    double fidelity = 0.0;
    double alpha_sq = 0.0;  // weight on the zero-tail subspace
    double eta = 0.0;       // P(Lambda > ell)
    bool chain_holds = false;  // F >= alpha^4 >= (1-eta)^2 >= 1-2eta
};

SufficiencyCheck sufficiency_bound_check(const SparseState& state, const QuantumCode& code,
                                         int ell, double tol = 1e-9);

struct SweepRow {
    int n_words = 0;
    int ell = 0;
    double eta_exact = 0.0;       // exact tail of the condensed length distribution
    double avg_fidelity = 0.0;
    double stderr_est = 0.0;      // zero in exact mode
    double bound_lower = 0.0;     // 1 - 2 eta
    double bound_upper = 1.0;
};

struct ExperimentConfig {
    int n_words = 0;
    std::vector<int> ells;
    int samples = 1000;
    uint64_t seed = 1;
    bool exact = false;  // enumerate all tuples when |ensemble|^N is small
};

// Average fidelity of truncate-and-restore over condensed N-tuples drawn from
// the ensemble, for each ell in the sweep.
std::vector<SweepRow> sufficiency_experiment(const Ensemble& ensemble,
                                             const ExperimentConfig& config);

struct NecessityReport {
    int ell = 0;
    double w_norm = 0.0;     // ||W|| = lambda_max(rho)^k
    double alpha_sq = 0.0;   // P(Lambda_{N-k} < ell), exact convolution
    double bound = 0.0;      // ||W|| + 15 sqrt(alpha)
    bool side_condition_ok = false;  // ell <= (N-k)(<l> - delta/2)
    bool informative = false;        // bound < 1
};

NecessityReport necessity_bound(const Ensemble& ensemble, int n_words, int k, double delta);

// Minimal (k, N) with lambda^k < eps/2 and 15 sqrt(alpha) < eps/2 at
// ell = N(<l> - delta), using exact tails.
struct PlannerResult {
    int k = 0;
    int n_words = 0;
    NecessityReport report;
};
PlannerResult necessity_planner(const Ensemble& ensemble, double eps, double delta,
                                int max_n = 4096);

struct LengthIdentityReport {
    double avg_len = 0.0;
    double entropy = 0.0;
    double rel_entropy = 0.0;
    double log_k = 0.0;
    double residual = 0.0;  // avg_len - (S + D - log K)
    bool holds = false;
    bool entropy_bound_holds = false;  // avg_len >= S(rho)
};

// <l> = S(rho) + D(rho||omega) - log K, both sides computed independently.
LengthIdentityReport length_identity(const Ensemble& ensemble, double tol = 1e-9);

struct LengthOptimizingReport {
    bool optimizing = false;
    double kraft_sum = 0.0;
    double max_deviation = 0.0;  // max-entry |rho - omega|
    double overhead = 0.0;       // D(rho||omega) in qubits
};

LengthOptimizingReport length_optimizing_check(const Ensemble& ensemble);

struct BlockCodeReport {
    int block_size = 0;
    double avg_block_length = 0.0;
    double per_signal_length = 0.0;
    double entropy = 0.0;  // S(rho) of the elementary source
    bool bound_holds = false;  // S <= <l>/n < S + 1/n
};

// Shannon-Fano (or Huffman) code over the spectrum of rho^{(x) n}.
enum class BlockConstruction { kShannonFano, kHuffman };
std::pair<QuantumCode, BlockCodeReport> block_code(const DensityMatrix& rho, int block_size,
                                                   BlockConstruction construction =
                                                       BlockConstruction::kShannonFano);
std::pair<ClassicalCode, BlockCodeReport> block_code_from_spectrum(
    const std::vector<double>& spectrum, int block_size,
    BlockConstruction construction = BlockConstruction::kShannonFano);

}  // namespace qzef
