#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "qzef/compress.hpp"

namespace qzef {

// Key/value configuration document with [section] headers; see the README
// for the grammar.
class RunConfig {
public:
    static RunConfig parse(std::istream& in);
    static RunConfig parse_string(const std::string& text);
    static RunConfig parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    const std::string& get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    const std::vector<std::string>& lines(const std::string& section,
                                          const std::string& key) const;

    std::vector<double> get_doubles(const std::string& section, const std::string& key) const;
    std::vector<int> get_ints(const std::string& section, const std::string& key) const;
    std::vector<std::string> get_tokens(const std::string& section,
                                        const std::string& key) const;

    // [code] section: words, lengths, or spectrum + construction.
    ClassicalCode classical_code() const;
    QuantumCode quantum_code() const;

    // [ensemble] section over the configured code.
    Ensemble ensemble() const;

    int experiment_int(const std::string& key, int fallback) const;
    uint64_t experiment_seed(uint64_t fallback) const;
    std::vector<int> ell_sweep(int n_words, int l_max) const;
    std::vector<double> delta_list() const;

private:
    // Repeated keys accumulate (used by `entry` lines).
    std::map<std::string, std::map<std::string, std::vector<std::string>>> values_;
};

}  // namespace qzef
