#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "qzef/codes.hpp"

using namespace qzef;
using qzef::test::make_rng;
using qzef::test::paper_code;
using qzef::test::paper_quantum_code;
using qzef::test::random_distribution;
using qzef::test::random_kraft_lengths;

namespace {

std::vector<int> lengths_of(const ClassicalCode& code) {
    std::vector<int> out;
    for (const auto& w : code.codewords) out.push_back(static_cast<int>(w.size()));
    return out;
}

// Minimal average length over all prefix-free codes with lengths <= max_len,
// by exhaustive search over length assignments satisfying Kraft.
double brute_force_optimum(const std::vector<double>& probs, int max_len) {
    std::size_t n = probs.size();
    std::vector<int> lengths(n, 1);
    double best = 1e9;
    while (true) {
        double kraft = 0.0;
        double avg = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            kraft += std::ldexp(1.0, -lengths[i]);
            avg += probs[i] * lengths[i];
        }
        if (kraft <= 1.0 + 1e-12) best = std::min(best, avg);
        std::size_t i = 0;
        for (;; ++i) {
            if (i == n) return best;
            if (++lengths[i] <= max_len) break;
            lengths[i] = 1;
        }
    }
}

}  // namespace

TEST_CASE("classical Kraft sums") {
    CHECK(kraft_sum_classical(paper_code()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kraft_sum_classical(ClassicalCode({"0", "1"})) == doctest::Approx(1.0));
    CHECK(kraft_sum_classical(ClassicalCode({"0", "1", "10"})) == doctest::Approx(1.25));
}

TEST_CASE("classical prefix-free test") {
    CHECK(is_prefix_free_classical(paper_code()));
    CHECK_FALSE(is_prefix_free_classical(ClassicalCode({"0", "01"})));
    CHECK(is_prefix_free_classical(ClassicalCode({"00", "01", "10", "11"})));
}

TEST_CASE("Huffman construction") {
    ClassicalCode dyadic = huffman_from_probs({0.5, 0.25, 0.125, 0.125});
    CHECK(lengths_of(dyadic) == std::vector<int>{1, 2, 3, 3});
    CHECK(is_prefix_free_classical(dyadic));

    CHECK(lengths_of(huffman_from_probs({1.0})) == std::vector<int>{1});

    std::vector<int> thirds = lengths_of(huffman_from_probs({1.0 / 3, 1.0 / 3, 1.0 / 3}));
    std::sort(thirds.begin(), thirds.end());
    CHECK(thirds == std::vector<int>{1, 2, 2});

    CHECK_THROWS_AS(huffman_from_probs({0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(huffman_from_probs({1.5, -0.5}), std::invalid_argument);
}

TEST_CASE("Huffman optimality against brute force") {
    auto rng = make_rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> probs = random_distribution(rng, 4);
        ClassicalCode code = huffman_from_probs(probs);
        double avg = average_length(code, probs);
        CHECK(avg == doctest::Approx(brute_force_optimum(probs, 5)).epsilon(1e-10));
    }
}

TEST_CASE("Shannon-Fano lengths") {
    CHECK(shannon_fano_lengths({0.5, 0.25, 0.125, 0.125}) == std::vector<int>{1, 2, 3, 3});
    CHECK(shannon_fano_lengths({0.9, 0.1}) == std::vector<int>{1, 4});
    CHECK(shannon_fano_lengths({1.0 / 3, 1.0 / 3, 1.0 / 3}) == std::vector<int>{2, 2, 2});
}

TEST_CASE("Shannon-Fano bounds on random distributions") {
    auto rng = make_rng(32);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 + static_cast<int>(trial % 7);
        std::vector<double> probs = random_distribution(rng, n);
        std::vector<int> lengths = shannon_fano_lengths(probs);
        double kraft = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            kraft += std::ldexp(1.0, -lengths[i]);
            CHECK(static_cast<double>(lengths[i]) < -std::log2(probs[i]) + 1.0 + 1e-9);
        }
        CHECK(kraft <= 1.0 + 1e-12);

        // Huffman is never worse.
        double h_avg = average_length(huffman_from_probs(probs), probs);
        double sf_avg = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) sf_avg += probs[i] * lengths[i];
        CHECK(h_avg <= sf_avg + 1e-12);
    }
}

TEST_CASE("canonical Kraft assignment") {
    ClassicalCode canonical = kraft_assign({1, 2, 3, 3});
    CHECK(canonical.codewords == std::vector<std::string>{"0", "10", "110", "111"});
    CHECK(kraft_assign({1, 1}).codewords == std::vector<std::string>{"0", "1"});
    CHECK_THROWS_AS(kraft_assign({1, 1, 1}), std::invalid_argument);

    // Codewords come back in input order, not sorted order.
    ClassicalCode mixed = kraft_assign({3, 1, 3, 2});
    CHECK(lengths_of(mixed) == std::vector<int>{3, 1, 3, 2});
    CHECK(is_prefix_free_classical(mixed));
}

TEST_CASE("random Kraft assignments are prefix-free with exact lengths") {
    auto rng = make_rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> lengths = random_kraft_lengths(rng);
        ClassicalCode code = kraft_assign(lengths);
        CHECK(lengths_of(code) == lengths);
        CHECK(is_prefix_free_classical(code));
    }
}

TEST_CASE("lifting a classical code") {
    QuantumCode q = paper_quantum_code();
    CHECK(q.l_max == 3);
    CHECK(q.sector_dims() == std::vector<int>{1, 1, 2});
    CHECK_NOTHROW(q.validate());

    // Lambda = |000><000| + 2|100><100| + 3|110><110| + 3|111><111|.
    DensityMatrix lambda = length_observable(q);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(8, 8);
    expected(0, 0) = 1.0;  // 000
    expected(4, 4) = 2.0;  // 100
    expected(6, 6) = 3.0;  // 110
    expected(7, 7) = 3.0;  // 111
    CHECK((lambda.mat - expected).cwiseAbs().maxCoeff() < 1e-12);

    QuantumCode fixed = lift_classical(ClassicalCode({"00", "01", "10", "11"}), 2);
    CHECK(fixed.sector_dims() == std::vector<int>{0, 4});

    QuantumCode single = lift_classical(ClassicalCode({"0"}), 1);
    CHECK(single.sector_dims() == std::vector<int>{1});

    // Zero-extended collisions are rejected ("1" pads to "10").
    CHECK_THROWS_AS(lift_classical(ClassicalCode({"1", "10"}), 2), std::invalid_argument);
    CHECK_THROWS_AS(lift_classical(ClassicalCode({"110"}), 2), std::invalid_argument);
}

TEST_CASE("quantum Kraft sum") {
    CHECK(quantum_kraft_sum(paper_quantum_code()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(quantum_kraft_sum(lift_classical(ClassicalCode({"110"}), 3)) ==
          doctest::Approx(0.125));

    // Valid zef basis with K = 1.5 > 1: flagged non-condensable.
    QuantumCode over = lift_classical(ClassicalCode({"0", "1", "01", "11"}), 2);
    CHECK(quantum_kraft_sum(over) == doctest::Approx(1.5));
    CHECK_THROWS_AS(remap_to_prefix_free(over), std::invalid_argument);
}

TEST_CASE("quantum prefix-free criterion") {
    CHECK(is_prefix_free_quantum(paper_quantum_code()));
    CHECK_FALSE(is_prefix_free_quantum(lift_classical(ClassicalCode({"0", "01"}), 2)));
    CHECK(is_prefix_free_quantum(lift_classical(ClassicalCode({"00", "01", "10", "11"}), 2)));
}

TEST_CASE("quantum and classical prefix-free tests agree on random codes") {
    auto rng = make_rng(34);
    std::uniform_int_distribution<int> len(1, 4);
    std::uniform_int_distribution<int> bit(0, 1);
    int tested = 0;
    int prefix_free_seen = 0;
    while (tested < 200) {
        int count = std::uniform_int_distribution<int>(2, 5)(rng);
        std::vector<std::string> words;
        for (int i = 0; i < count; ++i) {
            int l = len(rng);
            std::string w;
            for (int b = 0; b < l; ++b) w.push_back(static_cast<char>('0' + bit(rng)));
            words.push_back(w);
        }
        std::sort(words.begin(), words.end());
        words.erase(std::unique(words.begin(), words.end()), words.end());
        ClassicalCode code(words);
        QuantumCode lifted;
        try {
            lifted = lift_classical(code, code.max_length());
        } catch (const std::invalid_argument&) {
            continue;  // zef collision; not liftable
        }
        bool classical = is_prefix_free_classical(code);
        CHECK(is_prefix_free_quantum(lifted) == classical);
        if (classical) ++prefix_free_seen;
        ++tested;
    }
    CHECK(prefix_free_seen > 0);
    CHECK(prefix_free_seen < tested);
}

TEST_CASE("remap to a prefix-free code") {
    // The paper-style code is already prefix-free: remap is basis-identical.
    RemapResult same = remap_to_prefix_free(paper_quantum_code());
    CHECK(same.code.sector_dims() == std::vector<int>{1, 1, 2});
    CHECK(is_prefix_free_quantum(same.code));

    // Non-prefix-free but Kraft-satisfying code with a rotated sector-1 basis.
    SparseState plus = SparseState::from_terms(
        1, {{"0", {M_SQRT1_2, 0.0}}, {"1", {M_SQRT1_2, 0.0}}});
    QuantumCode skew(2, {{plus}, {basis_state("01")}});
    CHECK_NOTHROW(skew.validate());
    CHECK_FALSE(is_prefix_free_quantum(skew));

    RemapResult remapped = remap_to_prefix_free(skew);
    CHECK(remapped.code.sector_dims() == skew.sector_dims());
    CHECK(is_prefix_free_quantum(remapped.code));

    // V is an isometry on the zef basis: images form an orthonormal set.
    for (std::size_t i = 0; i < remapped.basis_map.size(); ++i) {
        for (std::size_t j = 0; j < remapped.basis_map.size(); ++j) {
            cplx src = inner(remapped.basis_map[i].first, remapped.basis_map[j].first);
            cplx dst = inner(remapped.basis_map[i].second, remapped.basis_map[j].second);
            CHECK(std::abs(src - dst) < 1e-10);
        }
    }

    // Fixed-length multiplicities map to the full fixed-length code.
    QuantumCode two = lift_classical(ClassicalCode({"00", "01", "10", "11"}), 2);
    RemapResult fixed = remap_to_prefix_free(two);
    CHECK(fixed.code.sector_dims() == std::vector<int>{0, 4});
}

TEST_CASE("average length") {
    QuantumCode q = paper_quantum_code();
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(8, 8);
    d(0, 0) = 0.5;
    d(4, 4) = 0.25;
    d(6, 6) = 0.125;
    d(7, 7) = 0.125;
    CHECK(avg_length(DensityMatrix(3, d), q) == doctest::Approx(1.75).epsilon(1e-12));

    CHECK(avg_length(DensityMatrix::from_pure(q.zef(3, 0)), q) ==
          doctest::Approx(3.0).epsilon(1e-12));

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(8, 8);
    u(0, 0) = u(4, 4) = u(6, 6) = u(7, 7) = 0.25;
    CHECK(avg_length(DensityMatrix(3, u), q) == doctest::Approx(2.25).epsilon(1e-12));

    // Support leakage outside the zef subspace is rejected.
    CHECK_THROWS_AS(avg_length(DensityMatrix::from_pure(basis_state("001")), q),
                    std::invalid_argument);
}

TEST_CASE("omega operator") {
    QuantumCode q = paper_quantum_code();
    DensityMatrix omega = omega_operator(q);
    CHECK(std::abs(omega.mat(0, 0).real() - 0.5) < 1e-12);
    CHECK(std::abs(omega.mat(4, 4).real() - 0.25) < 1e-12);
    CHECK(std::abs(omega.mat(6, 6).real() - 0.125) < 1e-12);
    CHECK(std::abs(omega.mat(7, 7).real() - 0.125) < 1e-12);
    CHECK(omega.is_valid_density(1e-10));

    // K = 1/2 normalizes a single length-1 codeword to a pure state.
    QuantumCode single = lift_classical(ClassicalCode({"0"}), 1);
    DensityMatrix pure = omega_operator(single);
    CHECK(std::abs(pure.mat(0, 0).real() - 1.0) < 1e-12);
}

TEST_CASE("lifted Kraft sums agree with the classical sums") {
    auto rng = make_rng(35);
    for (int trial = 0; trial < 100; ++trial) {
        ClassicalCode code = kraft_assign(random_kraft_lengths(rng));
        QuantumCode lifted = lift_classical(code, code.max_length());
        CHECK(std::abs(quantum_kraft_sum(lifted) - kraft_sum_classical(code)) < 1e-12);
    }
}
