#include "qzef/config.hpp"

#include <fstream>
#include <sstream>

namespace qzef {

namespace {

std::string trim(const std::string& s) {
    std::size_t start = s.find_first_not_of(" \t\r");
    if (start == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(start, end - start + 1);
}

}  // namespace

RunConfig RunConfig::parse(std::istream& in) {
    RunConfig config;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": empty key");
        }
        config.values_[section][key].push_back(value);
    }
    return config;
}

RunConfig RunConfig::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse(in);
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
    auto sec = values_.find(section);
    return sec != values_.end() && sec->second.count(key) > 0;
}

const std::vector<std::string>& RunConfig::lines(const std::string& section,
                                                 const std::string& key) const {
    auto sec = values_.find(section);
    if (sec == values_.end()) throw std::runtime_error("missing section [" + section + "]");
    auto it = sec->second.find(key);
    if (it == sec->second.end()) {
        throw std::runtime_error("missing key '" + key + "' in section [" + section + "]");
    }
    return it->second;
}

const std::string& RunConfig::get(const std::string& section, const std::string& key) const {
    const auto& all = lines(section, key);
    if (all.size() != 1) {
        throw std::runtime_error("key '" + key + "' in [" + section + "] given more than once");
    }
    return all.front();
}

std::string RunConfig::get_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

std::vector<std::string> RunConfig::get_tokens(const std::string& section,
                                               const std::string& key) const {
    std::istringstream in(get(section, key));
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

std::vector<double> RunConfig::get_doubles(const std::string& section,
                                           const std::string& key) const {
    std::vector<double> out;
    for (const auto& tok : get_tokens(section, key)) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw std::runtime_error("key '" + key + "': not a number: " + tok);
        }
    }
    return out;
}

std::vector<int> RunConfig::get_ints(const std::string& section, const std::string& key) const {
    std::vector<int> out;
    for (const auto& tok : get_tokens(section, key)) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw std::runtime_error("key '" + key + "': not an integer: " + tok);
        }
    }
    return out;
}

ClassicalCode RunConfig::classical_code() const {
    if (has("code", "words")) {
        return ClassicalCode(get_tokens("code", "words"));
    }
    if (has("code", "lengths")) {
        return kraft_assign(get_ints("code", "lengths"));
    }
    if (has("code", "spectrum")) {
        std::vector<double> probs = get_doubles("code", "spectrum");
        std::string construction = get_or("code", "construction", "shannon-fano");
        if (construction == "huffman") return huffman_from_probs(probs);
        if (construction == "shannon-fano") return kraft_assign(shannon_fano_lengths(probs));
        throw std::runtime_error("unknown construction: " + construction);
    }
    throw std::runtime_error("[code] needs one of: words, lengths, spectrum");
}

QuantumCode RunConfig::quantum_code() const {
    ClassicalCode classical = classical_code();
    int l_max = classical.max_length();
    if (has("code", "lmax")) l_max = std::stoi(get("code", "lmax"));
    return lift_classical(classical, l_max);
}

Ensemble RunConfig::ensemble() const {
    QuantumCode code = quantum_code();
    auto basis = code.zef_basis();
    std::vector<std::pair<double, SparseState>> entries;

    if (has("ensemble", "entry")) {
        // entry = p : re im index [re im index ...]
        for (const auto& line : lines("ensemble", "entry")) {
            std::size_t colon = line.find(':');
            if (colon == std::string::npos) {
                throw std::runtime_error("entry line needs 'p : components': " + line);
            }
            double p = std::stod(trim(line.substr(0, colon)));
            std::istringstream comps(line.substr(colon + 1));
            SparseState acc = SparseState::raw(code.l_max, {});
            double re = 0.0, im = 0.0;
            std::size_t idx = 0;
            while (comps >> re >> im >> idx) {
                if (idx >= basis.size()) {
                    throw std::runtime_error("entry references codeword " + std::to_string(idx) +
                                             " but the code has only " +
                                             std::to_string(basis.size()));
                }
                acc = add(acc, basis[idx].second.scaled(cplx{re, im}));
            }
            acc.normalize();
            entries.emplace_back(p, std::move(acc));
        }
    } else {
        std::vector<double> probs = get_doubles("ensemble", "probs");
        std::vector<int> refs;
        if (has("ensemble", "words")) {
            refs = get_ints("ensemble", "words");
        } else {
            for (std::size_t i = 0; i < probs.size(); ++i) refs.push_back(static_cast<int>(i));
        }
        if (refs.size() != probs.size()) {
            throw std::runtime_error("[ensemble] probs and words differ in count");
        }
        for (std::size_t i = 0; i < probs.size(); ++i) {
            int r = refs[i];
            if (r < 0 || static_cast<std::size_t>(r) >= basis.size()) {
                throw std::runtime_error("ensemble references codeword " + std::to_string(r) +
                                         " but the code has only " + std::to_string(basis.size()));
            }
            entries.emplace_back(probs[i], basis[static_cast<std::size_t>(r)].second);
        }
    }
    return Ensemble(std::move(code), std::move(entries));
}

int RunConfig::experiment_int(const std::string& key, int fallback) const {
    if (!has("experiment", key)) return fallback;
    return std::stoi(get("experiment", key));
}

uint64_t RunConfig::experiment_seed(uint64_t fallback) const {
    if (!has("experiment", "seed")) return fallback;
    return std::stoull(get("experiment", "seed"));
}

std::vector<int> RunConfig::ell_sweep(int n_words, int l_max) const {
    if (has("experiment", "ells")) return get_ints("experiment", "ells");
    std::vector<int> ells;
    for (int ell = 0; ell <= n_words * l_max; ++ell) ells.push_back(ell);
    return ells;
}

std::vector<double> RunConfig::delta_list() const {
    if (has("experiment", "delta")) return get_doubles("experiment", "delta");
    return {0.125, 0.25, 0.5};
}

}  // namespace qzef
