// Command-line front end: build codes, run Kraft/prefix checks, condense
// words, run compression experiments and entropy reports.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qzef/compress.hpp"
#include "qzef/config.hpp"
#include "qzef/errors.hpp"
#include "qzef/machine.hpp"
#include "qzef/serialize.hpp"

namespace {

using namespace qzef;

struct Options {
    std::string config_path;
    std::string out_path;
    uint64_t seed = 1;
    bool seed_given = false;
    bool exact = false;
    bool machine = false;
};

void write_output(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + opt.out_path);
    out << text;
}

RunConfig load_config(const Options& opt) {
    if (opt.config_path.empty()) throw std::runtime_error("this command needs --config");
    return RunConfig::parse_file(opt.config_path);
}

int cmd_kraft(const Options& opt) {
    RunConfig cfg = load_config(opt);
    ClassicalCode classical = cfg.classical_code();
    QuantumCode quantum = cfg.quantum_code();

    std::cout << "codewords:";
    for (const auto& w : classical.codewords) std::cout << " " << w;
    std::cout << "\n";
    std::cout << "classical Kraft sum = " << format_double(kraft_sum_classical(classical))
              << "\n";
    std::cout << "classical prefix-free: " << (is_prefix_free_classical(classical) ? "yes" : "no")
              << "\n";
    double k = quantum_kraft_sum(quantum);
    std::cout << "quantum Kraft sum K = " << format_double(k) << "\n";
    std::cout << "quantum prefix-free: " << (is_prefix_free_quantum(quantum) ? "yes" : "no")
              << "\n";
    std::cout << "d =";
    for (int d : quantum.sector_dims()) std::cout << " " << d;
    std::cout << "\n";
    if (k > 1.0 + 1e-12) {
        std::cout << "Kraft violated: " << format_double(k) << " (not condensable)\n";
    }
    return 0;
}

int cmd_lift(const Options& opt) {
    RunConfig cfg = load_config(opt);
    QuantumCode quantum = cfg.quantum_code();
    std::cout << "l_max = " << quantum.l_max << "\n";
    for (int l = 1; l <= quantum.l_max; ++l) {
        const auto& sector = quantum.sectors[static_cast<std::size_t>(l - 1)];
        std::cout << "sector l=" << l << " (d_" << l << " = " << sector.size() << ")\n";
        for (std::size_t i = 0; i < sector.size(); ++i) {
            std::cout << "  payload " << i << ":";
            for (const auto& [bits, amp] : sector[i].amplitudes()) {
                std::cout << " " << bits << " (" << format_double(amp.real()) << ","
                          << format_double(amp.imag()) << ")";
            }
            std::cout << "\n";
        }
    }
    if (!opt.out_path.empty()) write_output(opt, write_quantum_code(quantum));
    return 0;
}

// [condense] section: either `words = i j k` (zef basis indices) or repeated
// `word = re im index [re im index ...]` superposition lines.
std::vector<SparseState> condense_inputs(const RunConfig& cfg, const QuantumCode& code) {
    auto basis = code.zef_basis();
    std::vector<SparseState> words;
    if (cfg.has("condense", "words")) {
        for (int idx : cfg.get_ints("condense", "words")) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= basis.size()) {
                throw std::runtime_error("condense references codeword " + std::to_string(idx) +
                                         " but the code has only " +
                                         std::to_string(basis.size()));
            }
            words.push_back(basis[static_cast<std::size_t>(idx)].second);
        }
    } else if (cfg.has("condense", "word")) {
        for (const auto& line : cfg.lines("condense", "word")) {
            std::istringstream comps(line);
            SparseState acc = SparseState::raw(code.l_max, {});
            double re = 0.0, im = 0.0;
            std::size_t idx = 0;
            while (comps >> re >> im >> idx) {
                if (idx >= basis.size()) {
                    throw std::runtime_error("condense references codeword " +
                                             std::to_string(idx));
                }
                acc = add(acc, basis[idx].second.scaled(cplx{re, im}));
            }
            acc.normalize();
            words.push_back(std::move(acc));
        }
    } else {
        throw std::runtime_error("[condense] needs 'words' or 'word' lines");
    }
    if (words.empty()) throw std::runtime_error("no words to condense");
    return words;
}

int cmd_condense(const Options& opt) {
    RunConfig cfg = load_config(opt);
    QuantumCode quantum = cfg.quantum_code();
    std::vector<SparseState> words = condense_inputs(cfg, quantum);
    int n = static_cast<int>(words.size());

    CondensedString cs = simple_condense(quantum, words);
    IsometryReport iso = isometry_check(quantum, n);
    std::cout << "condensed " << n << " words onto " << cs.state.num_qubits() << " qubits\n";
    std::cout << "isometry check (N=" << n << "): " << (iso.ok ? "ok" : "FAILED")
              << ", max deviation " << format_double(iso.max_deviation) << " over "
              << iso.n_products << " products\n";
    std::cout << "norm deviation = " << format_double(cs.norm_deviation) << "\n";
    std::cout << "<L> = " << format_double(condensed_length_expectation(cs)) << "\n";

    if (opt.machine) {
        ClassicalCode classical = cfg.classical_code();
        // The machine runs on classical payloads; require basis-state inputs.
        std::vector<std::string> payloads;
        for (const auto& w : words) {
            auto comps = expand_in_code(quantum, w);
            if (comps.size() != 1) {
                throw std::runtime_error(
                    "--machine needs computational-basis codeword inputs");
            }
            const SparseState& p = quantum.payload(comps[0].length, comps[0].index);
            payloads.push_back(p.amplitudes().begin()->first);
        }
        MachineRun run = run_condense_program(classical, payloads);
        if (!run.ok) throw std::runtime_error("machine run failed: " + run.error);
        std::cout << "machine: halted at clock " << run.state.clock << " = 2*"
                  << run.deadline << ", tape " << run.state.tape_string() << "\n";
        if (!opt.out_path.empty()) {
            std::ofstream trace(opt.out_path + ".trace", std::ios::binary);
            trace << format_trace(run);
            std::cout << "trace written to " << opt.out_path << ".trace\n";
        }
    }

    write_output(opt, write_sparse_state(cs.state));
    return 0;
}

int cmd_compress(const Options& opt) {
    RunConfig cfg = load_config(opt);
    Ensemble ensemble = cfg.ensemble();
    int n = cfg.experiment_int("n", 4);
    ExperimentConfig exp;
    exp.n_words = n;
    exp.ells = cfg.ell_sweep(n, ensemble.code.l_max);
    exp.samples = cfg.experiment_int("samples", 1000);
    exp.seed = opt.seed_given ? opt.seed : cfg.experiment_seed(1);
    exp.exact = opt.exact;

    std::vector<SweepRow> rows = sufficiency_experiment(ensemble, exp);
    std::string csv = "N,ell,eta_exact,avg_fidelity,stderr,bound_lower,bound_upper\n";
    for (const auto& row : rows) {
        csv += std::to_string(row.n_words) + "," + std::to_string(row.ell) + "," +
               format_double(row.eta_exact) + "," + format_double(row.avg_fidelity) + "," +
               format_double(row.stderr_est) + "," + format_double(row.bound_lower) + "," +
               format_double(row.bound_upper) + "\n";
    }
    write_output(opt, csv);

    double mean_len = ensemble.average_length();
    int k = cfg.experiment_int("k", std::min(n - 1, 7));
    for (double delta : cfg.delta_list()) {
        NecessityReport rep = necessity_bound(ensemble, n, k, delta);
        std::cout << "N=" << n << " delta=" << format_double(delta)
                  << " ell=" << rep.ell << " |W|=" << format_double(rep.w_norm)
                  << " alpha^2=" << format_double(rep.alpha_sq)
                  << " bound=" << format_double(rep.bound)
                  << (rep.side_condition_ok ? "" : " (side condition unmet)")
                  << (rep.informative ? "" : " (non-informative)") << "\n";
    }
    std::cout << "<l> = " << format_double(mean_len) << ", N<l> = "
              << format_double(n * mean_len) << "\n";
    return 0;
}

int cmd_entropy(const Options& opt) {
    RunConfig cfg = load_config(opt);
    Ensemble ensemble = cfg.ensemble();
    LengthIdentityReport id = length_identity(ensemble);
    LengthOptimizingReport lo = length_optimizing_check(ensemble);

    std::ostringstream out;
    out << "<l> = " << format_double(id.avg_len) << "\n";
    out << "S(rho) = " << format_double(id.entropy) << "\n";
    out << "D(rho||omega) = " << format_double(id.rel_entropy) << "\n";
    out << "log K = " << format_double(id.log_k) << "\n";
    out << "identity residual = " << format_double(id.residual) << "\n";
    out << "length-optimizing: " << (lo.optimizing ? "yes" : "no") << "\n";
    if (!lo.optimizing) {
        out << "overhead D(rho||omega) = " << format_double(lo.overhead) << " qubits\n";
    }

    if (cfg.has("experiment", "blocks")) {
        DensityMatrix rho = rho_of(ensemble);
        out << "block coding:\n";
        for (int nb : cfg.get_ints("experiment", "blocks")) {
            auto [code, rep] = block_code(rho, nb);
            (void)code;
            out << "  n=" << nb << "  <l>/n = " << format_double(rep.per_signal_length)
                << "  S = " << format_double(rep.entropy)
                << (rep.bound_holds ? "" : "  BOUND VIOLATED") << "\n";
        }
    }
    write_output(opt, out.str());
    return 0;
}

int cmd_selftest(const Options&) {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "pass" : "FAIL") << "  " << name << "\n";
        if (!ok) ++failures;
    };

    ClassicalCode classical({"0", "10", "110", "111"});
    QuantumCode quantum = lift_classical(classical, 3);
    check("Kraft sum = 1", std::abs(quantum_kraft_sum(quantum) - 1.0) < 1e-12);
    check("prefix-free", is_prefix_free_quantum(quantum));

    IsometryReport iso = isometry_check(quantum, 2);
    check("condensation isometry (N=2)", iso.ok);

    MachineReport rev = check_reversibility(classical, 2);
    MachineReport ind = check_input_independence(classical, 2);
    check("machine reversibility", rev.ok);
    check("machine input independence", ind.ok);

    std::vector<std::pair<double, SparseState>> entries;
    auto basis = quantum.zef_basis();
    std::vector<double> probs = {0.5, 0.25, 0.125, 0.125};
    for (std::size_t i = 0; i < 4; ++i) entries.emplace_back(probs[i], basis[i].second);
    Ensemble dyadic(quantum, entries);
    LengthIdentityReport id = length_identity(dyadic);
    check("length identity (dyadic)", id.holds && std::abs(id.avg_len - 1.75) < 1e-12);
    check("length-optimizing (dyadic)", length_optimizing_check(dyadic).optimizing);

    SparseState phi = SparseState::from_terms(3, {{"000", {M_SQRT1_2, 0.0}},
                                                  {"110", {M_SQRT1_2, 0.0}}});
    check("truncation fidelity F=0.25", std::abs(truncation_fidelity(phi, 1) - 0.25) < 1e-12);

    std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"indeterminate-length quantum code toolkit"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "configuration file")->expected(1);
    app.add_option("--out", opt.out_path, "output file (default: stdout)")->expected(1);
    auto* seed_opt = app.add_option("--seed", opt.seed, "master RNG seed");
    app.add_flag("--exact", opt.exact, "exact enumeration instead of sampling");
    app.add_flag("--machine", opt.machine, "also run the reversible machine");

    auto* kraft = app.add_subcommand("kraft", "Kraft sums and prefix-free checks");
    auto* lift = app.add_subcommand("lift", "lift a classical code to a quantum code");
    auto* condense = app.add_subcommand("condense", "condense codewords into one string");
    auto* compress = app.add_subcommand("compress", "truncation fidelity experiments");
    auto* entropy = app.add_subcommand("entropy", "entropy and length identities");
    auto* selftest = app.add_subcommand("selftest", "quick built-in checks");

    // Subcommands accept the global flags in any position.
    for (auto* sub : {kraft, lift, condense, compress, entropy, selftest}) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);
    opt.seed_given = seed_opt->count() > 0;

    try {
        if (kraft->parsed()) return cmd_kraft(opt);
        if (lift->parsed()) return cmd_lift(opt);
        if (condense->parsed()) return cmd_condense(opt);
        if (compress->parsed()) return cmd_compress(opt);
        if (entropy->parsed()) return cmd_entropy(opt);
        if (selftest->parsed()) return cmd_selftest(opt);
    } catch (const qzef::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
