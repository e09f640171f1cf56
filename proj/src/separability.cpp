#include "gsep/separability.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gsep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int triangle_size(int edge) { return edge * (edge + 1) / 2; }

/// Symmetric basis element for upper-triangle slot (a, b), a <= b.
void add_basis_entry(Eigen::MatrixXd& target, int row0, int col0, int a, int b,
                     double sign) {
  target(row0 + a, col0 + b) += sign;
  if (a != b) target(row0 + b, col0 + a) += sign;
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

SeparabilityProblem build_separability_problem(const CovarianceMatrix& gamma,
                                               const ModePartition& partition) {
  partition.validate_for(gamma);
  const int dm = 2 * partition.modes_a;
  const int dn = 2 * partition.modes_b;
  const int full = dm + dn;
  const int da = triangle_size(dm);
  const int db = triangle_size(dn);
  const int d = da + db;

  SeparabilityProblem problem;
  problem.partition = partition;
  problem.dim_a_vars = da;
  problem.dim_b_vars = db;
  problem.lmi.dim_vars = d;

  LmiBlock dominance;
  dominance.constant = gamma.matrix();
  dominance.coeffs.assign(d, Eigen::MatrixXd::Zero(full, full));

  LmiBlock physical_a;
  physical_a.constant = Eigen::MatrixXd::Zero(2 * dm, 2 * dm);
  physical_a.constant.topRightCorner(dm, dm) = symplectic_form(partition.modes_a);
  physical_a.constant.bottomLeftCorner(dm, dm) =
      symplectic_form(partition.modes_a).transpose();
  physical_a.coeffs.assign(d, Eigen::MatrixXd::Zero(2 * dm, 2 * dm));

  LmiBlock physical_b;
  physical_b.constant = Eigen::MatrixXd::Zero(2 * dn, 2 * dn);
  physical_b.constant.topRightCorner(dn, dn) = symplectic_form(partition.modes_b);
  physical_b.constant.bottomLeftCorner(dn, dn) =
      symplectic_form(partition.modes_b).transpose();
  physical_b.coeffs.assign(d, Eigen::MatrixXd::Zero(2 * dn, 2 * dn));

  int var = 0;
  for (int a = 0; a < dm; ++a) {
    for (int b = a; b < dm; ++b) {
      add_basis_entry(dominance.coeffs[var], 0, 0, a, b, -1.0);
      add_basis_entry(physical_a.coeffs[var], 0, 0, a, b, 1.0);
      add_basis_entry(physical_a.coeffs[var], dm, dm, a, b, 1.0);
      ++var;
    }
  }
  for (int a = 0; a < dn; ++a) {
    for (int b = a; b < dn; ++b) {
      add_basis_entry(dominance.coeffs[var], dm, dm, a, b, -1.0);
      add_basis_entry(physical_b.coeffs[var], 0, 0, a, b, 1.0);
      add_basis_entry(physical_b.coeffs[var], dn, dn, a, b, 1.0);
      ++var;
    }
  }

  problem.lmi.blocks = {std::move(dominance), std::move(physical_a),
                        std::move(physical_b)};
  problem.lmi.var_bound = problem.lmi.effective_var_bound();
  return problem;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> unpack_witness(
    const SeparabilityProblem& problem, const Eigen::VectorXd& x) {
  if (x.size() != problem.dim_a_vars + problem.dim_b_vars) {
    throw std::invalid_argument("witness vector has wrong dimension");
  }
  const int dm = 2 * problem.partition.modes_a;
  const int dn = 2 * problem.partition.modes_b;
  Eigen::MatrixXd ga = Eigen::MatrixXd::Zero(dm, dm);
  Eigen::MatrixXd gb = Eigen::MatrixXd::Zero(dn, dn);
  int var = 0;
  for (int a = 0; a < dm; ++a) {
    for (int b = a; b < dm; ++b) {
      ga(a, b) = ga(b, a) = x(var++);
    }
  }
  for (int a = 0; a < dn; ++a) {
    for (int b = a; b < dn; ++b) {
      gb(a, b) = gb(b, a) = x(var++);
    }
  }
  return {ga, gb};
}

Eigen::VectorXd pack_witness(const SeparabilityProblem& problem,
                             const Eigen::MatrixXd& gamma_a,
                             const Eigen::MatrixXd& gamma_b) {
  const int dm = 2 * problem.partition.modes_a;
  const int dn = 2 * problem.partition.modes_b;
  if (gamma_a.rows() != dm || gamma_a.cols() != dm || gamma_b.rows() != dn ||
      gamma_b.cols() != dn) {
    throw std::invalid_argument("witness block shapes do not match partition");
  }
  Eigen::VectorXd x(problem.dim_a_vars + problem.dim_b_vars);
  int var = 0;
  for (int a = 0; a < dm; ++a) {
    for (int b = a; b < dm; ++b) x(var++) = gamma_a(a, b);
  }
  for (int a = 0; a < dn; ++a) {
    for (int b = a; b < dn; ++b) x(var++) = gamma_b(a, b);
  }
  return x;
}

bool validate_witness(const CovarianceMatrix& gamma,
                      const ModePartition& partition,
                      const Eigen::MatrixXd& gamma_a,
                      const Eigen::MatrixXd& gamma_b, double slack) {
  partition.validate_for(gamma);
  const int dm = 2 * partition.modes_a;
  const int dn = 2 * partition.modes_b;
  if (gamma_a.rows() != dm || gamma_a.cols() != dm || gamma_b.rows() != dn ||
      gamma_b.cols() != dn) {
    throw std::invalid_argument("witness block shapes do not match partition");
  }
  if ((gamma_a - gamma_a.transpose()).cwiseAbs().maxCoeff() > kAsymmetryGate ||
      (gamma_b - gamma_b.transpose()).cwiseAbs().maxCoeff() > kAsymmetryGate) {
    return false;
  }

  Eigen::MatrixXd difference = gamma.matrix();
  difference.topLeftCorner(dm, dm) -= gamma_a;
  difference.bottomRightCorner(dn, dn) -= gamma_b;
  if (min_eigenvalue(difference) < -slack) return false;

  const double phys_a = min_eigenvalue(
      hermitian_embedding(gamma_a, symplectic_form(partition.modes_a)));
  const double phys_b = min_eigenvalue(
      hermitian_embedding(gamma_b, symplectic_form(partition.modes_b)));
  return phys_a >= -slack && phys_b >= -slack;
}

std::string to_string(StateClass state_class) {
  switch (state_class) {
    case StateClass::kSeparable: return "SEPARABLE";
    case StateClass::kNptEntangled: return "NPT_ENTANGLED";
    case StateClass::kBoundEntangled: return "BOUND_ENTANGLED";
    case StateClass::kMarginal: return "MARGINAL";
    case StateClass::kUnphysical: return "UNPHYSICAL";
  }
  throw std::invalid_argument("unknown state class");
}

StateClass state_class_from_string(const std::string& name) {
  if (name == "SEPARABLE") return StateClass::kSeparable;
  if (name == "NPT_ENTANGLED") return StateClass::kNptEntangled;
  if (name == "BOUND_ENTANGLED") return StateClass::kBoundEntangled;
  if (name == "MARGINAL") return StateClass::kMarginal;
  if (name == "UNPHYSICAL") return StateClass::kUnphysical;
  throw std::invalid_argument("unknown state class '" + name + "'");
}

Classification classify(const CovarianceMatrix& gamma,
                        const ModePartition& partition,
                        const ClassifyOptions& options) {
  partition.validate_for(gamma);
  Classification result;
  result.ppt_min_eig = kNaN;
  result.lmi_margin = kNaN;

  const PhysicalityReport physicality = is_physical(gamma, options.tol_phys);
  result.physical_min_eig = physicality.min_eig;
  if (!physicality.physical) {
    result.state_class = StateClass::kUnphysical;
    result.diagnostic = "uncertainty relation violated";
    return result;
  }

  const PptReport ppt = ppt_check(gamma, partition, options.tol_phys);
  result.ppt_min_eig = ppt.min_eig;
  if (!ppt.ppt) {
    result.state_class = StateClass::kNptEntangled;
    return result;
  }

  const SeparabilityProblem problem =
      build_separability_problem(gamma, partition);
  SolveOptions solve_options;
  solve_options.epsilon = options.epsilon;
  solve_options.delta_feas = options.delta_feas;
  solve_options.gap_target = options.gap_target;
  solve_options.max_newton = options.max_newton;
  FeasibilityReport report = solve_feasibility(problem.lmi, solve_options);

  result.lmi_margin = report.margin;
  result.lmi_iterations = report.iterations;
  result.solver_converged = report.converged;
  result.diagnostic = report.diagnostic;

  switch (report.verdict) {
    case Feasibility::kFeasible: {
      auto witness = unpack_witness(problem, *report.witness);
      if (!validate_witness(gamma, partition, witness.first, witness.second)) {
        result.state_class = StateClass::kMarginal;
        result.diagnostic = "feasible point failed witness validation";
        return result;
      }
      result.state_class = StateClass::kSeparable;
      result.witness = std::move(witness);
      return result;
    }
    case Feasibility::kInfeasible:
      result.state_class = StateClass::kBoundEntangled;
      result.certificate = std::move(report.certificate);
      return result;
    case Feasibility::kMarginal:
      result.state_class = StateClass::kMarginal;
      return result;
  }
  throw std::runtime_error("unreachable verdict");
}

}  // namespace gsep
