#include "gsep/covariance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gsep {

CovarianceMatrix::CovarianceMatrix(int n_modes, const Eigen::MatrixXd& entries)
    : n_modes_(n_modes) {
  if (n_modes < 1) {
    throw std::invalid_argument("covariance matrix needs at least one mode");
  }
  const int d = 2 * n_modes;
  if (entries.rows() != d || entries.cols() != d) {
    throw std::invalid_argument(
        "covariance matrix must be " + std::to_string(d) + "x" +
        std::to_string(d) + " for " + std::to_string(n_modes) + " modes, got " +
        std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()));
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("covariance matrix has non-finite entries");
  }
  const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > kAsymmetryGate) {
    throw std::invalid_argument("covariance matrix asymmetry " +
                                std::to_string(asym) + " exceeds gate");
  }
  entries_ = 0.5 * (entries + entries.transpose());
}

CovarianceMatrix CovarianceMatrix::identity(int n_modes) {
  return CovarianceMatrix(n_modes,
                          Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

void ModePartition::validate_for(const CovarianceMatrix& gamma) const {
  if (modes_a < 1 || modes_b < 1) {
    throw std::invalid_argument("both partition sides need at least one mode");
  }
  if (total() != gamma.n_modes()) {
    throw std::invalid_argument(
        "partition " + std::to_string(modes_a) + "+" + std::to_string(modes_b) +
        " does not cover " + std::to_string(gamma.n_modes()) + " modes");
  }
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  if (n_modes < 1) {
    throw std::invalid_argument("symplectic form needs at least one mode");
  }
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

Eigen::MatrixXd partial_transpose_signs(const ModePartition& partition) {
  const int d = 2 * partition.total();
  Eigen::VectorXd signs = Eigen::VectorXd::Ones(d);
  for (int k = 0; k < partition.modes_a; ++k) signs(2 * k + 1) = -1.0;
  return signs.asDiagonal();
}

Eigen::MatrixXd hermitian_embedding(const Eigen::MatrixXd& gamma,
                                    const Eigen::MatrixXd& form) {
  const int d = static_cast<int>(gamma.rows());
  Eigen::MatrixXd embedded(2 * d, 2 * d);
  embedded.topLeftCorner(d, d) = gamma;
  embedded.topRightCorner(d, d) = form;
  embedded.bottomLeftCorner(d, d) = form.transpose();
  embedded.bottomRightCorner(d, d) = gamma;
  return embedded;
}

namespace {

double min_eig_of_test_matrix(const Eigen::MatrixXd& gamma,
                              const Eigen::MatrixXd& form) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      hermitian_embedding(gamma, form), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on test matrix");
  }
  return solver.eigenvalues().minCoeff();
}

}  // namespace

PhysicalityReport is_physical(const CovarianceMatrix& gamma, double tol) {
  const double min_eig = min_eig_of_test_matrix(
      gamma.matrix(), symplectic_form(gamma.n_modes()));
  return {min_eig >= -tol, min_eig};
}

Eigen::VectorXd symplectic_eigenvalues(const CovarianceMatrix& gamma) {
  const int n = gamma.n_modes();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gamma_eig(gamma.matrix());
  if (gamma_eig.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on covariance matrix");
  }
  if (gamma_eig.eigenvalues().minCoeff() <= 1e-12) {
    throw std::invalid_argument(
        "symplectic spectrum needs a positive definite covariance matrix");
  }
  const Eigen::MatrixXd sqrt_gamma =
      gamma_eig.eigenvectors() *
      gamma_eig.eigenvalues().cwiseSqrt().asDiagonal() *
      gamma_eig.eigenvectors().transpose();
  const Eigen::MatrixXd a = sqrt_gamma * symplectic_form(n) * sqrt_gamma;
  // Singular values of A come in pairs (nu_k, nu_k); eigensolve of A^T A.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sq(a.transpose() * a,
                                                    Eigen::EigenvaluesOnly);
  if (sq.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on symplectic spectrum");
  }
  const Eigen::VectorXd sv = sq.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::VectorXd nu(n);
  for (int k = 0; k < n; ++k) nu(k) = 0.5 * (sv(2 * k) + sv(2 * k + 1));
  return nu;
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma,
                                   const ModePartition& partition) {
  partition.validate_for(gamma);
  const Eigen::MatrixXd signs = partial_transpose_signs(partition);
  return CovarianceMatrix(gamma.n_modes(), signs * gamma.matrix() * signs);
}

PptReport ppt_check(const CovarianceMatrix& gamma,
                    const ModePartition& partition, double tol) {
  partition.validate_for(gamma);
  const CovarianceMatrix transposed = partial_transpose(gamma, partition);
  const double min_eig = min_eig_of_test_matrix(
      transposed.matrix(), symplectic_form(gamma.n_modes()));
  return {min_eig >= -tol, min_eig};
}

}  // namespace gsep
