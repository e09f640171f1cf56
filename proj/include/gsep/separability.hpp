#pragma once

#include <optional>
#include <string>
#include <utility>

#include "gsep/covariance.hpp"
#include "gsep/lmi.hpp"

namespace gsep {

/// Separability of gamma as an LMI feasibility problem in candidate local
/// covariance matrices (gamma_A, gamma_B):
///   block 1: gamma - diag(gamma_A, gamma_B) >= 0
///   block 2: gamma_A satisfies the uncertainty relation
///   block 3: gamma_B satisfies the uncertainty relation
/// Variables are the upper triangles of gamma_A then gamma_B, row-major,
/// giving m(2m+1) + n(2n+1) variables for an (m, n) partition.
struct SeparabilityProblem {
  ModePartition partition;
  LmiProblem lmi;
  int dim_a_vars = 0;
  int dim_b_vars = 0;
};

SeparabilityProblem build_separability_problem(const CovarianceMatrix& gamma,
                                               const ModePartition& partition);

/// Reassembles (gamma_A, gamma_B) from a variable vector.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> unpack_witness(
    const SeparabilityProblem& problem, const Eigen::VectorXd& x);

/// Flattens (gamma_A, gamma_B) into the variable ordering.
Eigen::VectorXd pack_witness(const SeparabilityProblem& problem,
                             const Eigen::MatrixXd& gamma_a,
                             const Eigen::MatrixXd& gamma_b);

/// True iff both blocks are physical and gamma dominates their direct sum,
/// all up to `slack` on the relevant minimum eigenvalues.
bool validate_witness(const CovarianceMatrix& gamma,
                      const ModePartition& partition,
                      const Eigen::MatrixXd& gamma_a,
                      const Eigen::MatrixXd& gamma_b, double slack = 1e-9);

enum class StateClass {
  kSeparable,
  kNptEntangled,
  kBoundEntangled,
  kMarginal,
  kUnphysical,
};

std::string to_string(StateClass state_class);
StateClass state_class_from_string(const std::string& name);

struct ClassifyOptions {
  double epsilon = 1e-8;
  double delta_feas = 1e-7;
  double tol_phys = kTolPhys;
  double gap_target = 1e-10;
  int max_newton = 200;
};

struct Classification {
  StateClass state_class = StateClass::kMarginal;
  /// Smallest eigenvalue of the physicality test matrix.
  double physical_min_eig = 0.0;
  /// Smallest eigenvalue of the PPT test matrix (NaN when unphysical).
  double ppt_min_eig = 0.0;
  /// Separability LMI optimum (NaN when the LMI was not reached).
  double lmi_margin = 0.0;
  std::optional<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> witness;
  std::optional<InfeasibilityCertificate> certificate;
  int lmi_iterations = 0;
  bool solver_converged = true;
  std::string diagnostic;
};

/// Full decision chain: physicality, then PPT, then the separability LMI
/// for PPT-passing states. SEPARABLE carries a validated witness pair;
/// BOUND_ENTANGLED carries a verified infeasibility certificate.
Classification classify(const CovarianceMatrix& gamma,
                        const ModePartition& partition,
                        const ClassifyOptions& options = {});

}  // namespace gsep
