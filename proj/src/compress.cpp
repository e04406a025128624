#include "qzef/compress.hpp"
#include "qzef/errors.hpp"

#include <cmath>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

namespace qzef {

Ensemble::Ensemble(QuantumCode c, std::vector<std::pair<double, SparseState>> e)
    : code(std::move(c)), entries(std::move(e)) {
    if (entries.empty()) throw std::invalid_argument("empty ensemble");
    double sum = 0.0;
    for (const auto& [p, state] : entries) {
        if (p <= 0.0) throw std::invalid_argument("ensemble probabilities must be positive");
        sum += p;
        expand_in_code(code, state);  // membership check
    }
    if (std::abs(sum - 1.0) > 1e-8) {
        throw std::invalid_argument("ensemble probabilities must sum to 1");
    }
}

LengthDistribution Ensemble::length_distribution() const {
    std::map<int, Dyadic> probs;
    for (const auto& [p, state] : entries) {
        Dyadic pd = Dyadic::from_double(p);
        for (const auto& comp : expand_in_code(code, state)) {
            Dyadic w = pd * Dyadic::from_double(std::norm(comp.coeff));
            auto it = probs.find(comp.length);
            if (it == probs.end()) {
                probs[comp.length] = w;
            } else {
                it->second = it->second + w;
            }
        }
    }
    return LengthDistribution(std::move(probs));
}

double Ensemble::average_length() const { return length_distribution().mean(); }

DensityMatrix rho_of(const Ensemble& ensemble) {
    DensityMatrix rho = DensityMatrix::zero(ensemble.code.l_max);
    for (const auto& [p, state] : ensemble.entries) {
        Eigen::VectorXcd v = dense_vector(state);
        rho.mat += p * (v * v.adjoint());
    }
    return rho;
}

DensityMatrix truncate_and_restore(const SparseState& state, int ell) {
    int n = state.num_qubits();
    if (ell < 0 || ell > n) throw std::invalid_argument("truncation point out of range");
    check_dense_limit(n);
    std::set<int> keep;
    for (int q = 1; q <= ell; ++q) keep.insert(q);
    DensityMatrix kept = partial_trace(state, keep);
    Eigen::Index pad_dim = Eigen::Index(1) << (n - ell);
    Eigen::MatrixXcd zeros = Eigen::MatrixXcd::Zero(pad_dim, pad_dim);
    zeros(0, 0) = 1.0;
    return DensityMatrix(n, Eigen::kroneckerProduct(kept.mat, zeros));
}

double truncation_fidelity(const SparseState& state, int ell) {
    int n = state.num_qubits();
    if (ell < 0 || ell > n) throw std::invalid_argument("truncation point out of range");
    std::size_t cut = static_cast<std::size_t>(ell);
    // z(prefix): amplitude of prefix followed by zeros.
    std::map<std::string, cplx> zero_tail;
    for (const auto& [bits, amp] : state.amplitudes()) {
        if (bits.find('1', cut) == std::string::npos) zero_tail[bits.substr(0, cut)] = amp;
    }
    // Group by discarded suffix; each group contributes |<phi| A_t (x) 0>|^2.
    std::map<std::string, cplx> per_suffix;
    for (const auto& [bits, amp] : state.amplitudes()) {
        auto it = zero_tail.find(bits.substr(0, cut));
        if (it == zero_tail.end()) continue;
        per_suffix[bits.substr(cut)] += std::conj(it->second) * amp;
    }
    double f = 0.0;
    for (const auto& [suffix, s] : per_suffix) {
        (void)suffix;
        f += std::norm(s);
    }
    return f;
}

double tail_probability(const SparseState& state, const QuantumCode& code, int ell) {
    double eta = 0.0;
    for (const auto& comp : expand_in_code(code, state)) {
        if (comp.length > ell) eta += std::norm(comp.coeff);
    }
    return eta;
}

SufficiencyCheck sufficiency_bound_check(const SparseState& state, const QuantumCode& code,
                                         int ell, double tol) {
    SufficiencyCheck check;
    check.fidelity = truncation_fidelity(state, ell);
    check.eta = tail_probability(state, code, ell);
    // alpha^2 is the weight on the zero-tail subspace; it can exceed 1 - eta
    // because longer codewords may end in zeros anyway.
    double alpha_sq = 0.0;
    std::size_t cut = static_cast<std::size_t>(ell);
    for (const auto& [bits, amp] : state.amplitudes()) {
        if (bits.find('1', cut) == std::string::npos) alpha_sq += std::norm(amp);
    }
    check.alpha_sq = alpha_sq;
    double a4 = alpha_sq * alpha_sq;
    double e2 = (1.0 - check.eta) * (1.0 - check.eta);
    check.chain_holds = check.fidelity >= a4 - tol && a4 >= e2 - tol &&
                        e2 >= 1.0 - 2.0 * check.eta - tol && alpha_sq >= 1.0 - check.eta - tol;
    return check;
}

namespace {

// Uniform double in [0,1) from the top 53 bits; keeps sampling deterministic
// across standard library implementations.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_index(const std::vector<double>& cumulative, std::mt19937_64& rng) {
    double u = uniform01(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    return std::min(idx, cumulative.size() - 1);
}

}  // namespace

std::vector<SweepRow> sufficiency_experiment(const Ensemble& ensemble,
                                             const ExperimentConfig& config) {
    int n = config.n_words;
    if (n < 1) throw std::invalid_argument("need at least one word");
    LengthDistribution condensed_dist = ensemble.length_distribution().power(n);

    std::size_t n_entries = ensemble.entries.size();
    bool exact = config.exact;
    if (exact && std::pow(static_cast<double>(n_entries), n) > 65536.0) {
        throw ResourceLimitError("exact enumeration limit exceeded; use sampling");
    }

    std::vector<double> sum(config.ells.size(), 0.0);
    std::vector<double> sum_sq(config.ells.size(), 0.0);
    double total_weight = 0.0;
    long n_samples = 0;

    auto accumulate = [&](const std::vector<const SparseState*>& words, double weight) {
        std::vector<SparseState> tuple;
        tuple.reserve(words.size());
        for (const SparseState* w : words) tuple.push_back(*w);
        CondensedString cs = simple_condense(ensemble.code, tuple);
        for (std::size_t e = 0; e < config.ells.size(); ++e) {
            double f = truncation_fidelity(cs.state, config.ells[e]);
            sum[e] += weight * f;
            sum_sq[e] += weight * f * f;
        }
        total_weight += weight;
        ++n_samples;
    };

    if (exact) {
        std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
        bool done = false;
        while (!done) {
            double weight = 1.0;
            std::vector<const SparseState*> words;
            for (std::size_t w = 0; w < pick.size(); ++w) {
                weight *= ensemble.entries[pick[w]].first;
                words.push_back(&ensemble.entries[pick[w]].second);
            }
            accumulate(words, weight);
            for (std::size_t w = 0;; ++w) {
                if (w == pick.size()) {
                    done = true;
                    break;
                }
                if (++pick[w] < n_entries) break;
                pick[w] = 0;
            }
        }
    } else {
        if (config.samples < 1) throw std::invalid_argument("need at least one sample");
        std::vector<double> cumulative;
        double acc = 0.0;
        for (const auto& [p, state] : ensemble.entries) {
            (void)state;
            acc += p;
            cumulative.push_back(acc);
        }
        std::mt19937_64 rng(config.seed);
        for (int s = 0; s < config.samples; ++s) {
            std::vector<const SparseState*> words;
            for (int w = 0; w < n; ++w) {
                words.push_back(&ensemble.entries[sample_index(cumulative, rng)].second);
            }
            accumulate(words, 1.0);
        }
    }

    std::vector<SweepRow> rows;
    for (std::size_t e = 0; e < config.ells.size(); ++e) {
        SweepRow row;
        row.n_words = n;
        row.ell = config.ells[e];
        row.eta_exact = condensed_dist.tail_greater(config.ells[e]);
        row.avg_fidelity = sum[e] / total_weight;
        if (!exact && n_samples > 1) {
            double mean = row.avg_fidelity;
            double var = std::max(0.0, sum_sq[e] / total_weight - mean * mean);
            row.stderr_est = std::sqrt(var / static_cast<double>(n_samples));
        }
        row.bound_lower = 1.0 - 2.0 * row.eta_exact;
        row.bound_upper = 1.0;
        rows.push_back(row);
    }
    return rows;
}

NecessityReport necessity_bound(const Ensemble& ensemble, int n_words, int k, double delta) {
    if (k < 1 || k >= n_words) throw std::invalid_argument("need 0 < k < N");
    DensityMatrix rho = rho_of(ensemble);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.mat, Eigen::EigenvaluesOnly);
    Eigen::VectorXd evals = es.eigenvalues();
    std::sort(evals.data(), evals.data() + evals.size(), std::greater<double>());
    if (evals.size() < 2 || evals(1) < 1e-12) {
        throw std::invalid_argument("ensemble must involve more than one codeword state");
    }
    double lambda = evals(0);

    double avg = ensemble.average_length();
    NecessityReport report;
    report.ell = static_cast<int>(std::floor(n_words * (avg - delta)));
    report.w_norm = std::pow(lambda, k);
    LengthDistribution head = ensemble.length_distribution().power(n_words - k);
    report.alpha_sq = head.tail_less(static_cast<double>(report.ell));
    report.bound = report.w_norm + 15.0 * std::sqrt(std::sqrt(report.alpha_sq));
    report.side_condition_ok =
        static_cast<double>(report.ell) <= (n_words - k) * (avg - delta / 2.0) + 1e-12;
    report.informative = report.bound < 1.0;
    return report;
}

PlannerResult necessity_planner(const Ensemble& ensemble, double eps, double delta, int max_n) {
    if (eps <= 0.0 || delta <= 0.0) throw std::invalid_argument("eps and delta must be positive");
    DensityMatrix rho = rho_of(ensemble);
    double lambda = operator_norm(rho);
    if (lambda >= 1.0 - 1e-12) {
        throw std::invalid_argument("ensemble must involve more than one codeword state");
    }
    int k = 1;
    while (std::pow(lambda, k) >= eps / 2.0) ++k;

    double avg = ensemble.average_length();
    LengthDistribution single = ensemble.length_distribution();
    LengthDistribution head = LengthDistribution::delta(0);
    for (int n = k + 1; n <= max_n; ++n) {
        head = head.convolve(single);  // (n - k)-fold, built incrementally
        int ell = static_cast<int>(std::floor(n * (avg - delta)));
        if (static_cast<double>(ell) > (n - k) * (avg - delta / 2.0)) continue;
        double alpha_sq = head.tail_less(static_cast<double>(ell));
        if (15.0 * std::sqrt(std::sqrt(alpha_sq)) < eps / 2.0) {
            PlannerResult result;
            result.k = k;
            result.n_words = n;
            result.report = necessity_bound(ensemble, n, k, delta);
            return result;
        }
    }
    throw ResourceLimitError("necessity planner exceeded the register budget");
}

LengthIdentityReport length_identity(const Ensemble& ensemble, double tol) {
    DensityMatrix rho = rho_of(ensemble);
    LengthIdentityReport report;
    report.avg_len = avg_length(rho, ensemble.code);
    report.entropy = von_neumann_entropy(rho);
    DensityMatrix omega = omega_operator(ensemble.code);
    report.rel_entropy = relative_entropy(rho, omega);
    report.log_k = std::log2(quantum_kraft_sum(ensemble.code));
    report.residual = report.avg_len - (report.entropy + report.rel_entropy - report.log_k);
    report.holds = std::isfinite(report.residual) && std::abs(report.residual) <= tol;
    report.entropy_bound_holds = report.avg_len >= report.entropy - tol;
    return report;
}

LengthOptimizingReport length_optimizing_check(const Ensemble& ensemble) {
    LengthOptimizingReport report;
    report.kraft_sum = quantum_kraft_sum(ensemble.code);
    DensityMatrix rho = rho_of(ensemble);
    DensityMatrix omega = omega_operator(ensemble.code);
    report.max_deviation = (rho.mat - omega.mat).cwiseAbs().maxCoeff();
    report.overhead = relative_entropy(rho, omega);
    report.optimizing =
        std::abs(report.kraft_sum - 1.0) <= 1e-10 && report.max_deviation <= 1e-9;
    return report;
}

std::pair<ClassicalCode, BlockCodeReport> block_code_from_spectrum(
    const std::vector<double>& spectrum, int block_size, BlockConstruction construction) {
    if (block_size < 1) throw std::invalid_argument("block size must be positive");
    std::size_t rank = spectrum.size();
    if (std::pow(static_cast<double>(rank), block_size) > 65536.0) {
        throw ResourceLimitError("block spectrum too large");
    }

    std::vector<double> block_probs;
    std::vector<std::size_t> pick(static_cast<std::size_t>(block_size), 0);
    bool done = false;
    while (!done) {
        double p = 1.0;
        for (std::size_t w = 0; w < pick.size(); ++w) p *= spectrum[pick[w]];
        block_probs.push_back(p);
        for (std::size_t w = 0;; ++w) {
            if (w == pick.size()) {
                done = true;
                break;
            }
            if (++pick[w] < rank) break;
            pick[w] = 0;
        }
    }

    ClassicalCode code = construction == BlockConstruction::kHuffman
                             ? huffman_from_probs(block_probs)
                             : kraft_assign(shannon_fano_lengths(block_probs));

    BlockCodeReport report;
    report.block_size = block_size;
    report.avg_block_length = average_length(code, block_probs);
    report.per_signal_length = report.avg_block_length / block_size;
    double h = 0.0;
    for (double p : spectrum) {
        if (p > 1e-15) h -= p * std::log2(p);
    }
    report.entropy = h;
    report.bound_holds = report.per_signal_length >= h - 1e-9 &&
                         report.per_signal_length < h + 1.0 / block_size + 1e-9;
    return {std::move(code), report};
}

std::pair<QuantumCode, BlockCodeReport> block_code(const DensityMatrix& rho, int block_size,
                                                   BlockConstruction construction) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.mat, Eigen::EigenvaluesOnly);
    std::vector<double> spectrum;
    for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;) {
        double lambda = es.eigenvalues()(i);
        if (lambda > 1e-12) spectrum.push_back(lambda);
    }
    auto [classical, report] = block_code_from_spectrum(spectrum, block_size, construction);
    QuantumCode quantum = lift_classical(classical, classical.max_length());
    return {std::move(quantum), report};
}

}  // namespace qzef
