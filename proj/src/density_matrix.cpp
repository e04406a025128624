#include "qzef/density_matrix.hpp"
#include "qzef/errors.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

namespace qzef {

void check_dense_limit(int num_qubits) {
    if (num_qubits > kDenseQubitLimit) {
        throw ResourceLimitError("dense operation requested on " + std::to_string(num_qubits) +
                                 " qubits; limit is " + std::to_string(kDenseQubitLimit));
    }
    if (num_qubits < 0) throw std::invalid_argument("negative qubit count");
}

std::size_t bits_to_index(const std::string& bits) {
    std::size_t idx = 0;
    for (char c : bits) idx = (idx << 1) | static_cast<std::size_t>(c - '0');
    return idx;
}

std::string index_to_bits(std::size_t index, int num_qubits) {
    std::string bits(static_cast<std::size_t>(num_qubits), '0');
    for (int i = num_qubits - 1; i >= 0; --i) {
        bits[static_cast<std::size_t>(i)] = static_cast<char>('0' + (index & 1));
        index >>= 1;
    }
    return bits;
}

DensityMatrix DensityMatrix::zero(int num_qubits) {
    check_dense_limit(num_qubits);
    Eigen::Index d = Eigen::Index(1) << num_qubits;
    return DensityMatrix(num_qubits, Eigen::MatrixXcd::Zero(d, d));
}

DensityMatrix DensityMatrix::from_pure(const SparseState& state) {
    Eigen::VectorXcd v = dense_vector(state);
    return DensityMatrix(state.num_qubits(), v * v.adjoint());
}

bool DensityMatrix::is_valid_density(double tol) const {
    if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(mat.trace().real() - 1.0) > tol || std::abs(mat.trace().imag()) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

void DensityMatrix::require_valid(double tol) const {
    if (!is_valid_density(tol)) throw std::invalid_argument("not a valid density matrix");
}

Eigen::VectorXcd dense_vector(const SparseState& state) {
    check_dense_limit(state.num_qubits());
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(1) << state.num_qubits());
    for (const auto& [bits, amp] : state.amplitudes()) {
        v(static_cast<Eigen::Index>(bits_to_index(bits))) = amp;
    }
    return v;
}

namespace {

void check_keep(const std::set<int>& keep, int num_qubits) {
    for (int q : keep) {
        if (q < 1 || q > num_qubits) {
            throw std::invalid_argument("keep index out of range: " + std::to_string(q));
        }
    }
    check_dense_limit(static_cast<int>(keep.size()));
}

}  // namespace

DensityMatrix partial_trace(const SparseState& state, const std::set<int>& keep) {
    check_keep(keep, state.num_qubits());
    int nk = static_cast<int>(keep.size());
    DensityMatrix out = DensityMatrix::zero(nk);
    // Group support strings by the discarded bits; each group contributes a
    // rank-one outer product on the kept bits.
    std::unordered_map<std::string, std::vector<std::pair<std::size_t, cplx>>> groups;
    for (const auto& [bits, amp] : state.amplitudes()) {
        std::string kept, dropped;
        kept.reserve(static_cast<std::size_t>(nk));
        for (int q = 1; q <= state.num_qubits(); ++q) {
            char c = bits[static_cast<std::size_t>(q - 1)];
            if (keep.count(q)) {
                kept.push_back(c);
            } else {
                dropped.push_back(c);
            }
        }
        groups[dropped].emplace_back(bits_to_index(kept), amp);
    }
    for (const auto& [dropped, terms] : groups) {
        (void)dropped;
        for (const auto& [i, ai] : terms) {
            for (const auto& [j, aj] : terms) {
                out.mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
                    ai * std::conj(aj);
            }
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& keep) {
    check_keep(keep, rho.num_qubits);
    int n = rho.num_qubits;
    int nk = static_cast<int>(keep.size());
    DensityMatrix out = DensityMatrix::zero(nk);
    std::size_t dim = std::size_t(1) << n;
    for (std::size_t i = 0; i < dim; ++i) {
        std::string bi = index_to_bits(i, n);
        for (std::size_t j = 0; j < dim; ++j) {
            std::string bj = index_to_bits(j, n);
            bool diagonal_in_dropped = true;
            std::string ki, kj;
            for (int q = 1; q <= n; ++q) {
                char ci = bi[static_cast<std::size_t>(q - 1)];
                char cj = bj[static_cast<std::size_t>(q - 1)];
                if (keep.count(q)) {
                    ki.push_back(ci);
                    kj.push_back(cj);
                } else if (ci != cj) {
                    diagonal_in_dropped = false;
                    break;
                }
            }
            if (!diagonal_in_dropped) continue;
            out.mat(static_cast<Eigen::Index>(bits_to_index(ki)),
                    static_cast<Eigen::Index>(bits_to_index(kj))) +=
                rho.mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

double fidelity_pure_mixed(const SparseState& phi, const DensityMatrix& sigma) {
    if (phi.num_qubits() != sigma.num_qubits) {
        throw std::invalid_argument("fidelity: register sizes differ");
    }
    Eigen::VectorXcd v = dense_vector(phi);
    return (v.adjoint() * sigma.mat * v)(0, 0).real();
}

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

double uhlmann_fidelity(const DensityMatrix& r1, const DensityMatrix& r2) {
    if (r1.num_qubits != r2.num_qubits) {
        throw std::invalid_argument("uhlmann_fidelity: register sizes differ");
    }
    r1.require_valid(1e-8);
    r2.require_valid(1e-8);
    Eigen::MatrixXcd s1 = hermitian_sqrt(r1.mat);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s1 * r2.mat * s1, Eigen::EigenvaluesOnly);
    double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    double f = tr * tr;
    return std::min(f, 1.0);
}

double operator_norm(const DensityMatrix& w) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w.mat, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.mat, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double lambda = es.eigenvalues()(i);
        if (lambda > 1e-15) s -= lambda * std::log2(lambda);
    }
    return s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& omega,
                        double support_tol) {
    if (rho.num_qubits != omega.num_qubits) {
        throw std::invalid_argument("relative_entropy: register sizes differ");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eo(omega.mat);
    // Weight of rho outside omega's support.
    double leak = 0.0;
    double tr_rho_log_omega = 0.0;
    for (Eigen::Index i = 0; i < eo.eigenvalues().size(); ++i) {
        double mu = eo.eigenvalues()(i);
        Eigen::VectorXcd v = eo.eigenvectors().col(i);
        double w = (v.adjoint() * rho.mat * v)(0, 0).real();
        if (mu < support_tol) {
            leak += w;
        } else if (w > 0.0) {
            tr_rho_log_omega += w * std::log2(mu);
        }
    }
    if (leak > support_tol) return std::numeric_limits<double>::infinity();
    double tr_rho_log_rho = -von_neumann_entropy(rho);
    return tr_rho_log_rho - tr_rho_log_omega;
}

}  // namespace qzef
