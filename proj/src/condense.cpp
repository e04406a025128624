#include "qzef/condense.hpp"
#include "qzef/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qzef {

namespace {

// Index within its sector of the flat zef-basis element `flat_index`.
int sector_index(const QuantumCode& code, std::size_t flat_index) {
    for (int l = 1; l <= code.l_max; ++l) {
        std::size_t dim = code.sectors[static_cast<std::size_t>(l - 1)].size();
        if (flat_index < dim) return static_cast<int>(flat_index);
        flat_index -= dim;
    }
    throw std::out_of_range("basis index out of range");
}

// Concatenate payloads and pad with zeros to n_words * l_max qubits.
SparseState condensed_tuple(const QuantumCode& code, const std::vector<const SparseState*>& payloads) {
    SparseState acc;  // zero-qubit unit state
    int used = 0;
    for (const SparseState* p : payloads) {
        acc = tensor(acc, *p);
        used += p->num_qubits();
    }
    int total = static_cast<int>(payloads.size()) * code.l_max;
    int pad = total - used;
    if (pad > 0) {
        acc = tensor(acc, SparseState::basis(std::string(static_cast<std::size_t>(pad), '0')));
    }
    return acc;
}

}  // namespace

std::vector<SectorComponent> expand_in_code(const QuantumCode& code, const SparseState& word,
                                            double support_tol) {
    if (word.num_qubits() != code.l_max) {
        throw std::invalid_argument("word register size does not match code");
    }
    std::vector<SectorComponent> components;
    SparseState residual = word;
    double expanded_weight = 0.0;
    for (int l = 1; l <= code.l_max; ++l) {
        const auto& sector = code.sectors[static_cast<std::size_t>(l - 1)];
        for (std::size_t i = 0; i < sector.size(); ++i) {
            cplx c = inner(code.zef(l, static_cast<int>(i)), word);
            if (std::abs(c) < 1e-12) continue;
            components.push_back({l, static_cast<int>(i), c});
            expanded_weight += std::norm(c);
        }
    }
    if (std::abs(expanded_weight - word.norm_squared()) > support_tol) {
        throw std::invalid_argument("state leaks outside the zef codeword subspace");
    }
    return components;
}

CondensedString simple_condense(const QuantumCode& code, const std::vector<SparseState>& words) {
    std::vector<std::vector<SectorComponent>> expansions;
    expansions.reserve(words.size());
    for (const auto& w : words) expansions.push_back(expand_in_code(code, w));

    int n = static_cast<int>(words.size());
    CondensedString cs;
    cs.code = code;
    cs.n_words = n;
    SparseState acc = SparseState::raw(n * code.l_max, {});

    // Odometer over the per-word component choices.
    std::vector<std::size_t> pick(words.size(), 0);
    bool done = words.empty();
    if (words.empty()) {
        cs.state = SparseState();
        cs.length_weights[0] = 1.0;
        return cs;
    }
    while (!done) {
        cplx coeff{1.0, 0.0};
        int total_length = 0;
        std::vector<const SparseState*> payloads;
        payloads.reserve(words.size());
        for (std::size_t w = 0; w < words.size(); ++w) {
            const SectorComponent& comp = expansions[w][pick[w]];
            coeff *= comp.coeff;
            total_length += comp.length;
            payloads.push_back(&code.payload(comp.length, comp.index));
        }
        SparseState term = condensed_tuple(code, payloads).scaled(coeff);
        acc = add(acc, term);
        cs.length_weights[total_length] += std::norm(coeff);

        for (std::size_t w = 0;; ++w) {
            if (w == words.size()) {
                done = true;
                break;
            }
            if (++pick[w] < expansions[w].size()) break;
            pick[w] = 0;
        }
    }

    cs.norm_deviation = std::abs(std::sqrt(acc.norm_squared()) - 1.0);
    if (cs.norm_deviation < 1e-9) acc.normalize();
    cs.state = std::move(acc);
    return cs;
}

std::vector<SparseState> decondense(const CondensedString& cs) {
    const QuantumCode& code = cs.code;
    int n = cs.n_words;
    auto basis = code.zef_basis();
    std::size_t d = basis.size();
    double count = std::pow(static_cast<double>(d), n);
    if (count > 4096.0) throw ResourceLimitError("decondense: basis tuple count exceeds limit");

    // Project onto the condensed tuple basis and rebuild the pre-condensation
    // register state.
    SparseState joint = SparseState::raw(n * code.l_max, {});
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    double captured = 0.0;
    bool done = (n == 0);
    while (!done) {
        std::vector<const SparseState*> payloads;
        payloads.reserve(static_cast<std::size_t>(n));
        for (int w = 0; w < n; ++w) {
            auto [l, zef] = basis[pick[static_cast<std::size_t>(w)]];
            (void)zef;
            payloads.push_back(&code.payload(l, sector_index(code, pick[static_cast<std::size_t>(w)])));
        }
        SparseState tuple_state = condensed_tuple(code, payloads);
        cplx c = inner(tuple_state, cs.state);
        if (std::abs(c) > 1e-12) {
            captured += std::norm(c);
            SparseState registers;
            for (int w = 0; w < n; ++w) {
                registers = tensor(registers, basis[pick[static_cast<std::size_t>(w)]].second);
            }
            joint = add(joint, registers.scaled(c));
        }
        for (std::size_t w = 0;; ++w) {
            if (w == static_cast<std::size_t>(n)) {
                done = true;
                break;
            }
            if (++pick[w] < d) break;
            pick[w] = 0;
        }
    }
    if (std::abs(captured - 1.0) > 1e-8) {
        throw std::runtime_error("state lies outside the image of simple condensation");
    }

    // Factor the joint register state into per-register words.
    std::string ref;
    double best = -1.0;
    for (const auto& [bits, amp] : joint.amplitudes()) {
        if (std::norm(amp) > best) {
            best = std::norm(amp);
            ref = bits;
        }
    }
    std::vector<SparseState> words;
    for (int w = 0; w < n; ++w) {
        SparseState::amp_map amps;
        std::size_t offset = static_cast<std::size_t>(w) * static_cast<std::size_t>(code.l_max);
        for (const auto& [bits, amp] : joint.amplitudes()) {
            std::string candidate = ref;
            candidate.replace(offset, static_cast<std::size_t>(code.l_max),
                              bits.substr(offset, static_cast<std::size_t>(code.l_max)));
            if (candidate != bits) continue;
            amps[bits.substr(offset, static_cast<std::size_t>(code.l_max))] = amp;
        }
        words.push_back(SparseState::from_terms(code.l_max, amps));
    }

    SparseState product;
    for (const auto& w : words) product = tensor(product, w);
    if (std::abs(std::abs(inner(product, joint)) - 1.0) > 1e-8) {
        throw std::runtime_error("condensed state is not a product of codewords");
    }
    return words;
}

IsometryReport isometry_check(const QuantumCode& code, int n_words, double tol, int max_products) {
    auto basis = code.zef_basis();
    std::size_t d = basis.size();
    double count = std::pow(static_cast<double>(d), n_words);
    if (count > static_cast<double>(max_products)) {
        throw ResourceLimitError("isometry_check: product count exceeds limit");
    }

    std::vector<SparseState> condensed;
    std::vector<std::size_t> pick(static_cast<std::size_t>(n_words), 0);
    bool done = (n_words == 0);
    while (!done) {
        std::vector<const SparseState*> payloads;
        for (int w = 0; w < n_words; ++w) {
            int l = basis[pick[static_cast<std::size_t>(w)]].first;
            payloads.push_back(&code.payload(l, sector_index(code, pick[static_cast<std::size_t>(w)])));
        }
        condensed.push_back(condensed_tuple(code, payloads));
        for (std::size_t w = 0;; ++w) {
            if (w == static_cast<std::size_t>(n_words)) {
                done = true;
                break;
            }
            if (++pick[w] < d) break;
            pick[w] = 0;
        }
    }

    IsometryReport report;
    report.n_products = static_cast<int>(condensed.size());
    for (std::size_t i = 0; i < condensed.size(); ++i) {
        for (std::size_t j = i; j < condensed.size(); ++j) {
            double expect = (i == j) ? 1.0 : 0.0;
            double dev = std::abs(inner(condensed[i], condensed[j]) - cplx{expect, 0.0});
            if (dev > report.max_deviation) {
                report.max_deviation = dev;
                report.worst_pair = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
        }
    }
    report.ok = report.max_deviation <= tol;
    return report;
}

double condensed_length_expectation(const CondensedString& cs) {
    double e = 0.0;
    for (const auto& [l, w] : cs.length_weights) e += l * w;
    return e;
}

LengthDistribution word_length_distribution(const QuantumCode& code, const SparseState& word) {
    std::map<int, double> probs;
    for (const auto& comp : expand_in_code(code, word)) {
        probs[comp.length] += std::norm(comp.coeff);
    }
    return LengthDistribution::from_doubles(probs);
}

DimensionCountReport dimension_count_check(const QuantumCode& code, int n_words) {
    if (static_cast<long long>(n_words) * code.l_max > 40) {
        throw ResourceLimitError("dimension_count_check: N * l_max exceeds 40");
    }
    auto dims = code.sector_dims();
    // Convolve the sector dimension counts N times, exactly.
    std::map<int, bigint> counts;
    counts[0] = 1;
    for (int w = 0; w < n_words; ++w) {
        std::map<int, bigint> next;
        for (const auto& [len, c] : counts) {
            for (int l = 1; l <= code.l_max; ++l) {
                int dl = dims[static_cast<std::size_t>(l - 1)];
                if (dl == 0) continue;
                next[len + l] += c * dl;
            }
        }
        counts = std::move(next);
    }

    DimensionCountReport report;
    report.ok = true;
    for (const auto& [len, c] : counts) {
        if (c > (bigint(1) << len)) {
            report.ok = false;
            report.violated_lengths.push_back(len);
        }
    }

    Dyadic k;
    for (int l = 1; l <= code.l_max; ++l) {
        k = k + Dyadic(dims[static_cast<std::size_t>(l - 1)], l);
    }
    Dyadic k_power = Dyadic::one();
    for (int w = 0; w < n_words; ++w) k_power = k_power * k;
    report.kraft_power_ok =
        k_power <= Dyadic(bigint(static_cast<long long>(n_words) * code.l_max), 0);
    return report;
}

}  // namespace qzef
