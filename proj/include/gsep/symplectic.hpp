#pragma once

#include <Eigen/Dense>

#include "gsep/covariance.hpp"

namespace gsep {

/// Permutation P with x_interleaved = P x_qqpp: maps the block ordering
/// (q_1..q_N, p_1..p_N) to the interleaved ordering used everywhere else.
Eigen::MatrixXd reordering_permutation(int n_modes);

/// Max-norm of S Omega S^T - Omega.
double symplectic_residual(const Eigen::MatrixXd& s);

bool is_symplectic(const Eigen::MatrixXd& s, double tol = 1e-8);

/// Williamson normal form gamma = S (diag(nu) ⊗ I_2) S^T with S symplectic
/// and nu_1 <= ... <= nu_N.
struct WilliamsonForm {
  Eigen::VectorXd nu;
  Eigen::MatrixXd S;
};

/// Computes the Williamson form of a positive definite covariance matrix.
/// Throws std::invalid_argument if gamma is not positive definite and
/// std::runtime_error if the factorization cannot be validated.
WilliamsonForm williamson_decompose(const CovarianceMatrix& gamma);

/// Euler (Bloch-Messiah) form S = K [⊕_k diag(e^-r_k, e^r_k)] L with K, L
/// orthogonal symplectic and r_1 >= ... >= r_N >= 0.
struct EulerForm {
  Eigen::MatrixXd K;
  Eigen::VectorXd r;
  Eigen::MatrixXd L;
};

/// Decomposes a symplectic matrix (symplectic within 1e-8, else throws
/// std::invalid_argument) into its Euler factors.
EulerForm euler_decompose(const Eigen::MatrixXd& s);

/// Direct sum of single-mode squeezers: ⊕_k diag(e^-r_k, e^r_k).
Eigen::MatrixXd squeezer_direct_sum(const Eigen::VectorXd& r);

/// Orthogonal symplectic matrix of the passive (energy-preserving) Gaussian
/// operation with N x N mode-space unitary Q: with Q = X + iY,
/// K = P [[X, Y], [-Y, X]] P^T. Requires Q unitary within 1e-10.
Eigen::MatrixXd unitary_to_symplectic(const Eigen::MatrixXcd& q);

/// Inverse of unitary_to_symplectic. Throws std::invalid_argument unless k
/// is orthogonal symplectic with the required block structure (within tol).
Eigen::MatrixXcd symplectic_to_unitary(const Eigen::MatrixXd& k,
                                       double tol = 1e-8);

/// Constructive description of a Gaussian state: thermal symplectic spectrum
/// nu, inner passive layer L (orthogonal symplectic matrix), squeezing
/// parameters r, and outer passive layer given as a mode-space unitary.
struct GaussianRecipe {
  Eigen::VectorXd nu;
  Eigen::MatrixXd L;
  Eigen::VectorXd r;
  Eigen::MatrixXcd q_unitary;
};

/// gamma = K Sigma L D_nu L^T Sigma K^T with K = unitary_to_symplectic(Q)
/// and Sigma the squeezer direct sum. Rejects nu_k < 1 and inconsistent
/// factor shapes with std::invalid_argument.
CovarianceMatrix compose_covariance(const GaussianRecipe& recipe);

}  // namespace gsep
