#include "qzef/codes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace qzef {

ClassicalCode::ClassicalCode(std::vector<std::string> words) : codewords(std::move(words)) {
    std::set<std::string> seen;
    for (const auto& w : codewords) {
        check_bits(w);
        if (w.empty()) throw std::invalid_argument("empty codeword");
        if (!seen.insert(w).second) throw std::invalid_argument("duplicate codeword: " + w);
    }
}

int ClassicalCode::max_length() const {
    int m = 0;
    for (const auto& w : codewords) m = std::max(m, static_cast<int>(w.size()));
    return m;
}

double kraft_sum_classical(const ClassicalCode& code) {
    double s = 0.0;
    for (const auto& w : code.codewords) s += std::ldexp(1.0, -static_cast<int>(w.size()));
    return s;
}

bool is_prefix_free_classical(const ClassicalCode& code) {
    for (std::size_t i = 0; i < code.codewords.size(); ++i) {
        for (std::size_t j = 0; j < code.codewords.size(); ++j) {
            if (i == j) continue;
            const auto& a = code.codewords[i];
            const auto& b = code.codewords[j];
            if (a.size() <= b.size() && b.compare(0, a.size(), a) == 0) return false;
        }
    }
    return true;
}

namespace {

void check_distribution(const std::vector<double>& probs) {
    if (probs.empty()) throw std::invalid_argument("empty distribution");
    double sum = 0.0;
    for (double p : probs) {
        if (p <= 0.0) throw std::invalid_argument("probabilities must be positive");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-8) throw std::invalid_argument("probabilities must sum to 1");
}

}  // namespace

ClassicalCode huffman_from_probs(const std::vector<double>& probs) {
    check_distribution(probs);
    std::size_t n = probs.size();
    if (n == 1) return kraft_assign({1});

    // Nodes ordered by (probability, earliest symbol index) for deterministic
    // tie-breaking.
    struct Node {
        double prob;
        std::size_t earliest;
        int id;
    };
    auto cmp = [](const Node& a, const Node& b) {
        if (a.prob != b.prob) return a.prob > b.prob;
        return a.earliest > b.earliest;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> heap(cmp);
    std::vector<std::pair<int, int>> children;  // children of internal nodes
    int next_id = static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) heap.push({probs[i], i, static_cast<int>(i)});
    while (heap.size() > 1) {
        Node a = heap.top();
        heap.pop();
        Node b = heap.top();
        heap.pop();
        children.emplace_back(a.id, b.id);
        heap.push({a.prob + b.prob, std::min(a.earliest, b.earliest), next_id++});
    }

    std::vector<int> depth(static_cast<std::size_t>(next_id), 0);
    for (std::size_t k = children.size(); k-- > 0;) {
        int node = static_cast<int>(n + k);
        depth[static_cast<std::size_t>(children[k].first)] = depth[static_cast<std::size_t>(node)] + 1;
        depth[static_cast<std::size_t>(children[k].second)] = depth[static_cast<std::size_t>(node)] + 1;
    }
    std::vector<int> lengths(depth.begin(), depth.begin() + static_cast<std::ptrdiff_t>(n));
    return kraft_assign(lengths);
}

std::vector<int> shannon_fano_lengths(const std::vector<double>& probs) {
    check_distribution(probs);
    std::vector<int> lengths;
    lengths.reserve(probs.size());
    for (double p : probs) {
        int l = static_cast<int>(std::ceil(-std::log2(p) - 1e-12));
        lengths.push_back(std::max(1, l));
    }
    return lengths;
}

ClassicalCode kraft_assign(const std::vector<int>& lengths) {
    if (lengths.empty()) throw std::invalid_argument("no lengths");
    int l_max = 0;
    for (int l : lengths) {
        if (l < 1) throw std::invalid_argument("codeword lengths must be positive");
        l_max = std::max(l_max, l);
    }
    if (l_max > 62) throw std::invalid_argument("codeword length too large");
    // Exact Kraft check: sum 2^{l_max - l} <= 2^{l_max}.
    unsigned long long scaled = 0;
    for (int l : lengths) scaled += 1ULL << (l_max - l);
    if (scaled > (1ULL << l_max)) {
        throw std::invalid_argument("Kraft inequality violated; cannot assign prefix-free code");
    }

    std::vector<std::size_t> order(lengths.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lengths[a] < lengths[b]; });

    std::vector<std::string> words(lengths.size());
    unsigned long long value = 0;
    int prev_len = 0;
    bool first = true;
    for (std::size_t idx : order) {
        int l = lengths[idx];
        if (first) {
            value = 0;
            first = false;
        } else {
            value = (value + 1) << (l - prev_len);
        }
        prev_len = l;
        std::string w(static_cast<std::size_t>(l), '0');
        for (int b = 0; b < l; ++b) {
            w[static_cast<std::size_t>(b)] =
                static_cast<char>('0' + ((value >> (l - 1 - b)) & 1));
        }
        words[idx] = w;
    }
    return ClassicalCode(words);
}

double average_length(const ClassicalCode& code, const std::vector<double>& probs) {
    if (code.codewords.size() != probs.size()) {
        throw std::invalid_argument("codeword and probability counts differ");
    }
    double avg = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        avg += probs[i] * static_cast<double>(code.codewords[i].size());
    }
    return avg;
}

QuantumCode::QuantumCode(int lmax, std::vector<std::vector<SparseState>> secs)
    : l_max(lmax), sectors(std::move(secs)) {
    if (l_max < 1) throw std::invalid_argument("l_max must be positive");
    if (static_cast<int>(sectors.size()) != l_max) {
        throw std::invalid_argument("expected one sector per length 1..l_max");
    }
    for (int l = 1; l <= l_max; ++l) {
        for (const auto& payload : sectors[static_cast<std::size_t>(l - 1)]) {
            if (payload.num_qubits() != l) {
                throw std::invalid_argument("sector " + std::to_string(l) +
                                            " payload has wrong register size");
            }
        }
    }
}

std::vector<int> QuantumCode::sector_dims() const {
    std::vector<int> d;
    d.reserve(sectors.size());
    for (const auto& sec : sectors) d.push_back(static_cast<int>(sec.size()));
    return d;
}

int QuantumCode::basis_count() const {
    int n = 0;
    for (const auto& sec : sectors) n += static_cast<int>(sec.size());
    return n;
}

SparseState QuantumCode::zef(int l, int i) const { return zef_of_payload(payload(l, i)); }

SparseState QuantumCode::zef_of_payload(const SparseState& payload) const {
    int pad = l_max - payload.num_qubits();
    if (pad < 0) throw std::invalid_argument("payload longer than register");
    if (pad == 0) return payload;
    return tensor(payload, SparseState::basis(std::string(static_cast<std::size_t>(pad), '0')));
}

std::vector<std::pair<int, SparseState>> QuantumCode::zef_basis() const {
    std::vector<std::pair<int, SparseState>> basis;
    for (int l = 1; l <= l_max; ++l) {
        for (std::size_t i = 0; i < sectors[static_cast<std::size_t>(l - 1)].size(); ++i) {
            basis.emplace_back(l, zef(l, static_cast<int>(i)));
        }
    }
    return basis;
}

void QuantumCode::validate(double tol) const {
    auto basis = zef_basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            cplx g = inner(basis[i].second, basis[j].second);
            double expect = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - expect) > tol) {
                throw std::invalid_argument("zef basis is not orthonormal");
            }
        }
    }
}

QuantumCode lift_classical(const ClassicalCode& code, int l_max) {
    if (code.max_length() > l_max) {
        throw std::invalid_argument("codeword longer than l_max");
    }
    if (code.codewords.empty()) throw std::invalid_argument("no codewords");
    // Zero-extended forms must stay distinct: a codeword that is another
    // codeword plus trailing zeros would collide after padding.  Prefix
    // freedom is not required here; it is a separate, stronger property.
    std::set<std::string> padded;
    for (const auto& w : code.codewords) {
        std::string p = w + std::string(static_cast<std::size_t>(l_max) - w.size(), '0');
        if (!padded.insert(p).second) {
            throw std::invalid_argument("codewords collide in zero-extended form: " + w);
        }
    }
    std::vector<std::vector<SparseState>> sectors(static_cast<std::size_t>(l_max));
    for (const auto& w : code.codewords) {
        sectors[w.size() - 1].push_back(SparseState::basis(w));
    }
    return QuantumCode(l_max, std::move(sectors));
}

double quantum_kraft_sum(const QuantumCode& code) {
    double k = 0.0;
    auto dims = code.sector_dims();
    for (int l = 1; l <= code.l_max; ++l) {
        k += dims[static_cast<std::size_t>(l - 1)] * std::ldexp(1.0, -l);
    }
    return k;
}

bool is_prefix_free_quantum(const QuantumCode& code, double tol) {
    auto dims = code.sector_dims();
    for (int l = 1; l <= code.l_max; ++l) {
        if (dims[static_cast<std::size_t>(l - 1)] == 0) continue;
        for (int lp = l + 1; lp <= code.l_max; ++lp) {
            if (dims[static_cast<std::size_t>(lp - 1)] == 0) continue;
            check_dense_limit(l);
            Eigen::Index d = Eigen::Index(1) << l;
            Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(d, d);
            for (const auto& payload : code.sectors[static_cast<std::size_t>(l - 1)]) {
                Eigen::VectorXcd v = dense_vector(payload);
                proj += v * v.adjoint();
            }
            std::set<int> keep;
            for (int q = 1; q <= l; ++q) keep.insert(q);
            Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(d, d);
            for (const auto& payload : code.sectors[static_cast<std::size_t>(lp - 1)]) {
                reduced += partial_trace(payload, keep).mat;
            }
            double overlap = (proj * reduced).trace().real();
            if (overlap > tol) return false;
        }
    }
    return true;
}

RemapResult remap_to_prefix_free(const QuantumCode& code) {
    if (quantum_kraft_sum(code) > 1.0 + 1e-12) {
        throw std::invalid_argument("quantum Kraft sum exceeds 1; remap impossible");
    }
    std::vector<int> lengths;
    for (int l = 1; l <= code.l_max; ++l) {
        for (std::size_t i = 0; i < code.sectors[static_cast<std::size_t>(l - 1)].size(); ++i) {
            (void)i;
            lengths.push_back(l);
        }
    }
    ClassicalCode target = kraft_assign(lengths);
    QuantumCode mapped = lift_classical(target, code.l_max);

    RemapResult result;
    result.code = mapped;
    std::size_t w = 0;
    for (int l = 1; l <= code.l_max; ++l) {
        for (std::size_t i = 0; i < code.sectors[static_cast<std::size_t>(l - 1)].size(); ++i) {
            SparseState src = code.zef(l, static_cast<int>(i));
            SparseState dst = mapped.zef_of_payload(SparseState::basis(target.codewords[w]));
            result.basis_map.emplace_back(std::move(src), std::move(dst));
            ++w;
        }
    }
    return result;
}

double avg_length(const DensityMatrix& rho, const QuantumCode& code, double support_tol) {
    if (rho.num_qubits != code.l_max) {
        throw std::invalid_argument("rho register size does not match code");
    }
    double total_weight = 0.0;
    double avg = 0.0;
    for (const auto& [l, zef] : code.zef_basis()) {
        Eigen::VectorXcd v = dense_vector(zef);
        double w = (v.adjoint() * rho.mat * v)(0, 0).real();
        total_weight += w;
        avg += l * w;
    }
    if (std::abs(total_weight - 1.0) > support_tol) {
        throw std::invalid_argument("rho leaks outside the zef codeword subspace");
    }
    return avg;
}

DensityMatrix omega_operator(const QuantumCode& code) {
    double k = quantum_kraft_sum(code);
    if (k <= 0.0) throw std::invalid_argument("empty code");
    DensityMatrix omega = DensityMatrix::zero(code.l_max);
    for (const auto& [l, zef] : code.zef_basis()) {
        Eigen::VectorXcd v = dense_vector(zef);
        omega.mat += (std::ldexp(1.0, -l) / k) * (v * v.adjoint());
    }
    return omega;
}

DensityMatrix length_observable(const QuantumCode& code) {
    DensityMatrix lambda = DensityMatrix::zero(code.l_max);
    for (const auto& [l, zef] : code.zef_basis()) {
        Eigen::VectorXcd v = dense_vector(zef);
        lambda.mat += static_cast<double>(l) * (v * v.adjoint());
    }
    return lambda;
}

}  // namespace qzef
