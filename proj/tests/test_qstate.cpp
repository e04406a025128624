#include <doctest.h>

#include "helpers.hpp"
#include "qzef/compress.hpp"
#include "qzef/density_matrix.hpp"
#include "qzef/errors.hpp"

using namespace qzef;
using qzef::test::make_rng;
using qzef::test::random_density;
using qzef::test::random_state;

TEST_CASE("basis states") {
    SparseState s = basis_state("000");
    CHECK(s.num_qubits() == 3);
    CHECK(s.amplitude("000") == cplx{1.0, 0.0});
    CHECK(s.support_size() == 1);

    SparseState empty = basis_state("");
    CHECK(empty.num_qubits() == 0);
    CHECK(empty.amplitude("") == cplx{1.0, 0.0});

    CHECK(basis_state("10").amplitude("10") == cplx{1.0, 0.0});
    CHECK_THROWS_AS(basis_state("02"), std::invalid_argument);
}

TEST_CASE("inner products") {
    CHECK(inner(basis_state("000"), basis_state("000")) == cplx{1.0, 0.0});
    CHECK(inner(basis_state("000"), basis_state("100")) == cplx{0.0, 0.0});
    SparseState phi = SparseState::from_terms(
        3, {{"000", {M_SQRT1_2, 0.0}}, {"111", {M_SQRT1_2, 0.0}}});
    CHECK(std::abs(inner(phi, phi) - cplx{1.0, 0.0}) < 1e-12);
    CHECK_THROWS_AS(inner(basis_state("0"), basis_state("00")), std::invalid_argument);
}

TEST_CASE("tensor products") {
    SparseState s = tensor(basis_state("0"), basis_state("1"));
    CHECK(s.num_qubits() == 2);
    CHECK(s.amplitude("01") == cplx{1.0, 0.0});

    SparseState plus = SparseState::from_terms(
        1, {{"0", {M_SQRT1_2, 0.0}}, {"1", {M_SQRT1_2, 0.0}}});
    SparseState t = tensor(plus, basis_state("0"));
    CHECK(std::abs(t.amplitude("00").real() - M_SQRT1_2) < 1e-12);
    CHECK(std::abs(t.amplitude("10").real() - M_SQRT1_2) < 1e-12);

    SparseState two = SparseState::from_terms(1, {{"0", {1.0, 0.0}}, {"1", {1.0, 0.0}}});
    SparseState three = SparseState::from_terms(
        2, {{"00", {1.0, 0.0}}, {"01", {1.0, 0.0}}, {"10", {1.0, 0.0}}});
    CHECK(tensor(two, three).support_size() == 6);
}

TEST_CASE("partial trace") {
    DensityMatrix r = partial_trace(basis_state("00"), {1});
    CHECK(std::abs(r.mat(0, 0).real() - 1.0) < 1e-12);

    SparseState bell = SparseState::from_terms(
        2, {{"00", {M_SQRT1_2, 0.0}}, {"11", {M_SQRT1_2, 0.0}}});
    DensityMatrix half = partial_trace(bell, {1});
    CHECK(std::abs(half.mat(0, 0).real() - 0.5) < 1e-12);
    CHECK(std::abs(half.mat(1, 1).real() - 0.5) < 1e-12);
    CHECK(std::abs(half.mat(0, 1)) < 1e-12);

    DensityMatrix one = partial_trace(basis_state("110"), {1});
    CHECK(std::abs(one.mat(1, 1).real() - 1.0) < 1e-12);
    CHECK(std::abs(one.mat(0, 0)) < 1e-12);

    CHECK_THROWS_AS(partial_trace(basis_state("00"), {3}), std::invalid_argument);
}

TEST_CASE("partial trace preserves trace on random states") {
    auto rng = make_rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        SparseState s = random_state(rng, 4);
        DensityMatrix r = partial_trace(s, {1, 3});
        CHECK(std::abs(r.trace_real() - 1.0) < 1e-10);
        CHECK(r.is_valid_density(1e-9));
    }
}

TEST_CASE("fidelity of pure state with mixed state") {
    CHECK(fidelity_pure_mixed(basis_state("0"), DensityMatrix::from_pure(basis_state("0"))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity_pure_mixed(basis_state("0"), DensityMatrix::from_pure(basis_state("1"))) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // phi = (|000> + |110>)/sqrt(2) truncated at ell = 1.
    SparseState phi = SparseState::from_terms(
        3, {{"000", {M_SQRT1_2, 0.0}}, {"110", {M_SQRT1_2, 0.0}}});
    DensityMatrix sigma = truncate_and_restore(phi, 1);
    CHECK(fidelity_pure_mixed(phi, sigma) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("Uhlmann fidelity basics") {
    auto rng = make_rng(21);
    DensityMatrix rho(2, random_density(rng, 4));
    CHECK(uhlmann_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));

    DensityMatrix p0 = DensityMatrix::from_pure(basis_state("0"));
    DensityMatrix p1 = DensityMatrix::from_pure(basis_state("1"));
    CHECK(uhlmann_fidelity(p0, p1) == doctest::Approx(0.0).epsilon(1e-9));

    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(2, 2);
    mixed(0, 0) = 0.5;
    mixed(1, 1) = 0.5;
    CHECK(uhlmann_fidelity(p0, DensityMatrix(1, mixed)) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("Uhlmann fidelity cross-checks against pure-state formulas") {
    auto rng = make_rng(22);
    for (int trial = 0; trial < 40; ++trial) {
        SparseState a = random_state(rng, 2);
        SparseState b = random_state(rng, 2);
        double overlap = std::norm(inner(a, b));
        double f = uhlmann_fidelity(DensityMatrix::from_pure(a), DensityMatrix::from_pure(b));
        CHECK(f == doctest::Approx(overlap).epsilon(1e-8));

        DensityMatrix sigma(2, random_density(rng, 4));
        CHECK(std::abs(uhlmann_fidelity(DensityMatrix::from_pure(a), sigma) -
                       fidelity_pure_mixed(a, sigma)) < 1e-7);
    }
}

TEST_CASE("fidelity triangle inequality on random triples") {
    auto rng = make_rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        DensityMatrix r1(2, random_density(rng, 4));
        DensityMatrix r2(2, random_density(rng, 4));
        DensityMatrix r3(2, random_density(rng, 4));
        double f13 = uhlmann_fidelity(r1, r3);
        double f23 = uhlmann_fidelity(r2, r3);
        double f12 = uhlmann_fidelity(r1, r2);
        CHECK(std::sqrt(f13) <=
              std::sqrt(f23) + std::sqrt(2.0 * (1.0 - std::sqrt(f12))) + 1e-9);
    }
}

TEST_CASE("fidelity monotone under the truncation channel") {
    auto rng = make_rng(24);
    for (int trial = 0; trial < 50; ++trial) {
        SparseState a = random_state(rng, 3);
        SparseState b = random_state(rng, 3);
        double before = uhlmann_fidelity(DensityMatrix::from_pure(a), DensityMatrix::from_pure(b));
        for (int ell = 0; ell <= 3; ++ell) {
            double after = uhlmann_fidelity(truncate_and_restore(a, ell),
                                            truncate_and_restore(b, ell));
            CHECK(after >= before - 1e-9);
        }
    }
}

TEST_CASE("operator norm") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
    d(0, 0) = 0.5;
    d(1, 1) = 0.25;
    d(2, 2) = 0.125;
    d(3, 3) = 0.125;
    CHECK(operator_norm(DensityMatrix(2, d)) == doctest::Approx(0.5).epsilon(1e-12));

    // Largest eigenvalue of a k-fold product power is lambda_max^k.
    CHECK(std::pow(0.5, 3) == doctest::Approx(0.125));
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(8, 8) / 8.0;
    CHECK(operator_norm(DensityMatrix(3, id)) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(DensityMatrix::from_pure(basis_state("01"))) ==
          doctest::Approx(0.0).epsilon(1e-10));

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
    d(0, 0) = 0.5;
    d(1, 1) = 0.25;
    d(2, 2) = 0.125;
    d(3, 3) = 0.125;
    CHECK(von_neumann_entropy(DensityMatrix(2, d)) == doctest::Approx(1.75).epsilon(1e-12));

    Eigen::MatrixXcd half = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
    CHECK(von_neumann_entropy(DensityMatrix(1, half)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy equals Shannon entropy of the eigenvalues") {
    auto rng = make_rng(25);
    for (int trial = 0; trial < 50; ++trial) {
        DensityMatrix rho(2, random_density(rng, 4, 4));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.mat, Eigen::EigenvaluesOnly);
        double h = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            double lambda = es.eigenvalues()(i);
            if (lambda > 1e-15) h -= lambda * std::log2(lambda);
        }
        CHECK(von_neumann_entropy(rho) == doctest::Approx(h).epsilon(1e-10));
    }
}

TEST_CASE("relative entropy") {
    auto rng = make_rng(26);
    DensityMatrix rho(2, random_density(rng, 4, 4));
    CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-9));

    // Classical KL of (1, 0) against (1/2, 1/2).
    Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(2, 2);
    pure(0, 0) = 1.0;
    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
    CHECK(relative_entropy(DensityMatrix(1, pure), DensityMatrix(1, mixed)) ==
          doctest::Approx(1.0).epsilon(1e-10));

    // Support violation: omega concentrated on |0>, rho with weight on |1>.
    CHECK(std::isinf(relative_entropy(DensityMatrix(1, mixed), DensityMatrix(1, pure))));

    // Positivity for distinct states.
    for (int trial = 0; trial < 50; ++trial) {
        DensityMatrix a(1, random_density(rng, 2, 2));
        DensityMatrix b(1, random_density(rng, 2, 2));
        double d = relative_entropy(a, b);
        if ((a.mat - b.mat).cwiseAbs().maxCoeff() > 1e-6) CHECK(d > 0.0);
    }
}

TEST_CASE("dense limit is enforced") {
    CHECK_THROWS_AS(check_dense_limit(13), ResourceLimitError);
    CHECK_NOTHROW(check_dense_limit(12));
}
