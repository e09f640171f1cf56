#pragma once

#include <Eigen/Dense>

namespace gsep {

/// Default tolerance for positivity checks on physicality / PPT spectra.
inline constexpr double kTolPhys = 1e-9;

/// Maximum tolerated asymmetry ||M - M^T||_max when ingesting a covariance
/// matrix; larger asymmetry is rejected, smaller is symmetrized away.
inline constexpr double kAsymmetryGate = 1e-9;

/// Real 2N x 2N covariance matrix of an N-mode Gaussian state in the
/// interleaved quadrature ordering (q_1, p_1, q_2, p_2, ...).
///
/// Construction symmetrizes the entries and rejects matrices whose
/// asymmetry exceeds the gate; no physicality condition is imposed here, so
/// unphysical matrices can be represented and diagnosed.
class CovarianceMatrix {
 public:
  CovarianceMatrix(int n_modes, const Eigen::MatrixXd& entries);

  static CovarianceMatrix identity(int n_modes);

  int n_modes() const { return n_modes_; }
  int dim() const { return 2 * n_modes_; }
  const Eigen::MatrixXd& matrix() const { return entries_; }

 private:
  int n_modes_;
  Eigen::MatrixXd entries_;
};

/// Bipartite split of the modes: the first `modes_a` modes form subsystem A,
/// the remaining `modes_b` form subsystem B.
struct ModePartition {
  int modes_a;
  int modes_b;

  int total() const { return modes_a + modes_b; }

  /// Throws std::invalid_argument unless both parts are positive and the
  /// total matches the state's mode count.
  void validate_for(const CovarianceMatrix& gamma) const;
};

/// Symplectic form Omega = direct sum of N copies of [[0, 1], [-1, 0]] in the
/// interleaved ordering. Entries are exactly 0 or +-1.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Diagonal sign matrix implementing partial transposition on subsystem A:
/// -1 on the momentum rows of A's modes, +1 elsewhere.
Eigen::MatrixXd partial_transpose_signs(const ModePartition& partition);

/// Hermitian test matrix gamma + iB realised as the real symmetric embedding
/// [[gamma, B], [B^T, gamma]] (same spectrum, multiplicities doubled).
Eigen::MatrixXd hermitian_embedding(const Eigen::MatrixXd& gamma,
                                    const Eigen::MatrixXd& form);

struct PhysicalityReport {
  bool physical;
  double min_eig;  ///< smallest eigenvalue of the gamma + i*Omega test matrix
};

/// Uncertainty-relation check gamma + i*Omega >= 0 with tolerance `tol` on
/// the smallest eigenvalue.
PhysicalityReport is_physical(const CovarianceMatrix& gamma,
                              double tol = kTolPhys);

/// Symplectic spectrum nu_1 <= ... <= nu_N (physical states have all
/// nu_k >= 1). Requires gamma positive definite: smallest ordinary
/// eigenvalue > 1e-12, otherwise throws std::invalid_argument.
Eigen::VectorXd symplectic_eigenvalues(const CovarianceMatrix& gamma);

/// Momentum reflection on subsystem A: gamma -> S gamma S with
/// S = partial_transpose_signs(partition). An involution.
CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma,
                                   const ModePartition& partition);

struct PptReport {
  bool ppt;
  double min_eig;  ///< smallest eigenvalue of the partially transposed test
};

/// Positive-partial-transpose criterion: physicality of the partially
/// transposed covariance. Failing states are entangled (NPT); passing
/// states may still be bound entangled.
PptReport ppt_check(const CovarianceMatrix& gamma,
                    const ModePartition& partition, double tol = kTolPhys);

}  // namespace gsep
