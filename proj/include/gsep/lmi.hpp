#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace gsep {

/// One semidefinite constraint block A0 + sum_i x_i A_i >= t I.
/// All matrices are symmetric and share the block's edge length.
struct LmiBlock {
  Eigen::MatrixXd constant;            ///< A0
  std::vector<Eigen::MatrixXd> coeffs; ///< A_1 ... A_d
};

/// Joint feasibility problem: find x with every block positive semidefinite.
/// Decided through the auxiliary program  max t  s.t.  G_j(x) >= t I,
/// |x_i| <= var_bound, with a sign test on the optimum.
struct LmiProblem {
  int dim_vars = 0;
  std::vector<LmiBlock> blocks;
  /// Box radius for the variables; <= 0 selects the default
  /// max(10, 10 * max_j max_entry |A0_j|).
  double var_bound = 0.0;

  double effective_var_bound() const;
  /// Throws std::invalid_argument on shape or symmetry violations.
  void validate() const;
};

struct SolveOptions {
  double epsilon = 1e-8;     ///< infeasibility threshold on the optimum
  double delta_feas = 1e-7;  ///< strict-feasibility threshold on the optimum
  double gap_target = 1e-10; ///< duality-gap target for the barrier path
  int max_newton = 200;      ///< total Newton-step budget
};

enum class Feasibility { kFeasible, kInfeasible, kMarginal };

/// Dual certificate of infeasibility: PSD blocks Z_j with
/// sum_j <A_ij, Z_j> = 0 for all i, sum_j tr Z_j = 1, and
/// sum_j <A0_j, Z_j> = -delta_cert < 0.
struct InfeasibilityCertificate {
  std::vector<Eigen::MatrixXd> dual_blocks;
  double delta_cert = 0.0;
};

struct CertificateCheck {
  bool valid = false;
  double slack = 0.0;            ///< -sum_j <A0_j, Z_j>
  double min_dual_eig = 0.0;     ///< most negative eigenvalue over blocks
  double linear_residual = 0.0;  ///< max_i |sum_j <A_ij, Z_j>|
  double trace_residual = 0.0;   ///< |sum_j tr Z_j - 1|
};

struct FeasibilityReport {
  Feasibility verdict = Feasibility::kMarginal;
  /// Optimal margin t* = min_j lambda_min(G_j(x*)).
  double margin = 0.0;
  /// Feasible point achieving the margin (present iff verdict FEASIBLE).
  std::optional<Eigen::VectorXd> witness;
  /// Verified certificate (present iff verdict INFEASIBLE).
  std::optional<InfeasibilityCertificate> certificate;
  int iterations = 0;    ///< Newton steps consumed
  bool converged = false;
  std::string diagnostic;
};

/// Decides the feasibility problem by log-det barrier path following.
/// Deterministic: identical inputs give identical reports.
FeasibilityReport solve_feasibility(const LmiProblem& problem,
                                    const SolveOptions& options = {});

/// Constraint matrices G_j(x) = A0_j + sum_i x_i A_ij.
std::vector<Eigen::MatrixXd> eval_matrices(const LmiProblem& problem,
                                           const Eigen::VectorXd& x);

/// Smallest eigenvalue of each constraint block at x.
Eigen::VectorXd eval_constraints(const LmiProblem& problem,
                                 const Eigen::VectorXd& x);

/// Checks a certificate against the gates: dual blocks PSD within 1e-9,
/// traces summing to 1 within 1e-9, linear residuals within 1e-7, and
/// strictly positive slack.
CertificateCheck verify_certificate(const LmiProblem& problem,
                                    const InfeasibilityCertificate& cert);

}  // namespace gsep
