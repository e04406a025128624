#pragma once

#include <Eigen/Dense>
#include <set>
#include <vector>

#include "qzef/sparse_state.hpp"

namespace qzef {

// Dense operations are limited to this many qubits (4096-dimensional).
inline constexpr int kDenseQubitLimit = 12;

// Dense Hermitian operator on a small qubit register.  Used for reduced
// states, fidelities and entropies; not every instance is a valid density
// matrix (see validate()).
struct DensityMatrix {
    int num_qubits = 0;
    Eigen::MatrixXcd mat;

    DensityMatrix() : mat(Eigen::MatrixXcd::Zero(1, 1)) {}
    DensityMatrix(int nq, Eigen::MatrixXcd m) : num_qubits(nq), mat(std::move(m)) {}

    static DensityMatrix zero(int num_qubits);
    static DensityMatrix from_pure(const SparseState& state);

    Eigen::Index dim() const { return mat.rows(); }

    double trace_real() const { return mat.trace().real(); }

    // Hermitian within tol, unit trace within tol, eigenvalues >= -tol.
    bool is_valid_density(double tol = kNormTol) const;
    void require_valid(double tol = kNormTol) const;
};

void check_dense_limit(int num_qubits);

std::size_t bits_to_index(const std::string& bits);
std::string index_to_bits(std::size_t index, int num_qubits);

// Dense column vector of a sparse state (dense limit applies).
Eigen::VectorXcd dense_vector(const SparseState& state);

// Reduced density matrix on `keep` (1-based qubit indices, big-endian).
DensityMatrix partial_trace(const SparseState& state, const std::set<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& keep);

double fidelity_pure_mixed(const SparseState& phi, const DensityMatrix& sigma);

// (Tr sqrt(sqrt(r1) r2 sqrt(r1)))^2 via Hermitian eigendecomposition.
double uhlmann_fidelity(const DensityMatrix& r1, const DensityMatrix& r2);

// Largest eigenvalue of a Hermitian PSD operator.
double operator_norm(const DensityMatrix& w);

// Base-2 von Neumann entropy; 0 log 0 := 0.
double von_neumann_entropy(const DensityMatrix& rho);

// Quantum relative entropy D(rho||omega) in bits.  Returns +infinity when the
// support of rho leaks outside the support of omega.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& omega,
                        double support_tol = 1e-9);

// Hermitian square root with eigenvalue clamping at 0.
Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m);

}  // namespace qzef
