#include "gsep/lmi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gsep {

double LmiProblem::effective_var_bound() const {
  if (var_bound > 0.0) return var_bound;
  double largest = 0.0;
  for (const auto& block : blocks) {
    largest = std::max(largest, block.constant.cwiseAbs().maxCoeff());
  }
  return std::max(10.0, 10.0 * largest);
}

void LmiProblem::validate() const {
  if (dim_vars < 1) {
    throw std::invalid_argument("LMI problem needs at least one variable");
  }
  if (blocks.empty()) {
    throw std::invalid_argument("LMI problem needs at least one block");
  }
  for (const auto& block : blocks) {
    const auto rows = block.constant.rows();
    if (rows == 0 || rows != block.constant.cols()) {
      throw std::invalid_argument("LMI block constant must be square");
    }
    if (static_cast<int>(block.coeffs.size()) != dim_vars) {
      throw std::invalid_argument("LMI block needs one coefficient per variable");
    }
    auto check_symmetric = [rows](const Eigen::MatrixXd& m) {
      if (m.rows() != rows || m.cols() != rows) {
        throw std::invalid_argument("LMI coefficient shape mismatch");
      }
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("LMI matrices must be symmetric");
      }
    };
    check_symmetric(block.constant);
    for (const auto& coeff : block.coeffs) check_symmetric(coeff);
  }
}

std::vector<Eigen::MatrixXd> eval_matrices(const LmiProblem& problem,
                                           const Eigen::VectorXd& x) {
  if (x.size() != problem.dim_vars) {
    throw std::invalid_argument("variable vector has wrong dimension");
  }
  std::vector<Eigen::MatrixXd> out;
  out.reserve(problem.blocks.size());
  for (const auto& block : problem.blocks) {
    Eigen::MatrixXd g = block.constant;
    for (int i = 0; i < problem.dim_vars; ++i) {
      if (x(i) != 0.0) g += x(i) * block.coeffs[i];
    }
    out.push_back(std::move(g));
  }
  return out;
}

Eigen::VectorXd eval_constraints(const LmiProblem& problem,
                                 const Eigen::VectorXd& x) {
  const auto mats = eval_matrices(problem, x);
  Eigen::VectorXd mins(static_cast<int>(mats.size()));
  for (std::size_t j = 0; j < mats.size(); ++j) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        mats[j], Eigen::EigenvaluesOnly);
    mins(static_cast<int>(j)) = solver.eigenvalues().minCoeff();
  }
  return mins;
}

CertificateCheck verify_certificate(const LmiProblem& problem,
                                    const InfeasibilityCertificate& cert) {
  problem.validate();
  CertificateCheck check;
  if (cert.dual_blocks.size() != problem.blocks.size()) return check;
  for (std::size_t j = 0; j < problem.blocks.size(); ++j) {
    const auto& z = cert.dual_blocks[j];
    if (z.rows() != problem.blocks[j].constant.rows() ||
        z.cols() != problem.blocks[j].constant.cols()) {
      return check;
    }
  }

  double min_eig = 0.0;
  double trace_sum = 0.0;
  double objective = 0.0;
  for (std::size_t j = 0; j < problem.blocks.size(); ++j) {
    const Eigen::MatrixXd z =
        0.5 * (cert.dual_blocks[j] + cert.dual_blocks[j].transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        z, Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, solver.eigenvalues().minCoeff());
    trace_sum += z.trace();
    objective += problem.blocks[j].constant.cwiseProduct(z).sum();
  }
  double linear = 0.0;
  for (int i = 0; i < problem.dim_vars; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < problem.blocks.size(); ++j) {
      inner += problem.blocks[j].coeffs[i]
                   .cwiseProduct(cert.dual_blocks[j])
                   .sum();
    }
    linear = std::max(linear, std::abs(inner));
  }

  check.slack = -objective;
  check.min_dual_eig = min_eig;
  check.linear_residual = linear;
  check.trace_residual = std::abs(trace_sum - 1.0);
  check.valid = min_eig >= -1e-9 && check.trace_residual <= 1e-9 &&
                linear <= 1e-7 && check.slack > 0.0;
  return check;
}

namespace {

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

/// Dual blocks projected onto the affine subspace
/// {sum_j <A_ij, Z_j> = 0 for all i, sum_j tr Z_j = 1} and then clipped to
/// the PSD cone, alternating, ending on the affine step so the linear
/// residuals vanish to rounding.
void polish_certificate(const LmiProblem& problem,
                        std::vector<Eigen::MatrixXd>& dual) {
  const int d = problem.dim_vars;
  const int nc = d + 1;
  const std::size_t nb = problem.blocks.size();

  auto normal = [&](int a, std::size_t j) -> Eigen::MatrixXd {
    if (a < d) return problem.blocks[j].coeffs[a];
    return Eigen::MatrixXd::Identity(problem.blocks[j].constant.rows(),
                                     problem.blocks[j].constant.cols());
  };

  Eigen::MatrixXd gram(nc, nc);
  for (int a = 0; a < nc; ++a) {
    for (int b = a; b < nc; ++b) {
      double dot = 0.0;
      for (std::size_t j = 0; j < nb; ++j) {
        dot += normal(a, j).cwiseProduct(normal(b, j)).sum();
      }
      gram(a, b) = gram(b, a) = dot;
    }
  }
  const Eigen::MatrixXd gram_pinv =
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(gram)
          .pseudoInverse();

  auto residuals = [&](const std::vector<Eigen::MatrixXd>& zs) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(nc);
    for (int a = 0; a < nc; ++a) {
      for (std::size_t j = 0; j < nb; ++j) {
        c(a) += normal(a, j).cwiseProduct(zs[j]).sum();
      }
    }
    c(d) -= 1.0;
    return c;
  };
  auto affine_project = [&](std::vector<Eigen::MatrixXd>& zs) {
    const Eigen::VectorXd lambda = gram_pinv * residuals(zs);
    for (std::size_t j = 0; j < nb; ++j) {
      for (int a = 0; a < nc; ++a) zs[j] -= lambda(a) * normal(a, j);
    }
  };

  for (int sweep = 0; sweep < 60; ++sweep) {
    affine_project(dual);
    double most_negative = 0.0;
    for (auto& z : dual) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
          0.5 * (z + z.transpose().eval()));
      most_negative = std::min(most_negative, solver.eigenvalues().minCoeff());
      z = solver.eigenvectors() *
          solver.eigenvalues().cwiseMax(0.0).asDiagonal() *
          solver.eigenvectors().transpose();
    }
    if (most_negative > -1e-13 &&
        residuals(dual).cwiseAbs().maxCoeff() < 1e-12) {
      break;
    }
  }
  affine_project(dual);
}

}  // namespace

FeasibilityReport solve_feasibility(const LmiProblem& problem,
                                    const SolveOptions& options) {
  problem.validate();
  const int d = problem.dim_vars;
  const double bound = problem.effective_var_bound();
  const std::size_t nb = problem.blocks.size();

  // Cap on t keeping the feasible region of the auxiliary program bounded.
  double t_cap = 0.0;
  double t_start = 0.0;
  double coeff_mass = 0.0;
  {
    double max_top = -std::numeric_limits<double>::infinity();
    double min_bottom = std::numeric_limits<double>::infinity();
    for (const auto& block : problem.blocks) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
          block.constant, Eigen::EigenvaluesOnly);
      max_top = std::max(max_top, solver.eigenvalues().maxCoeff());
      min_bottom = std::min(min_bottom, solver.eigenvalues().minCoeff());
      double mass = 0.0;
      for (const auto& coeff : block.coeffs) mass += coeff.norm();
      coeff_mass = std::max(coeff_mass, mass);
    }
    t_cap = max_top + bound * coeff_mass + 1.0;
    t_start = min_bottom - 1.0;
  }

  int barrier_degree = 2 * d + 1;
  for (const auto& block : problem.blocks) {
    barrier_degree += static_cast<int>(block.constant.rows());
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
  double t = t_start;
  double mu = 1.0;
  const double mu_min = options.gap_target / barrier_degree;
  int newton_used = 0;
  bool converged = true;

  auto shifted_blocks = [&](const Eigen::VectorXd& xv, double tv) {
    auto mats = eval_matrices(problem, xv);
    for (auto& m : mats) {
      m -= tv * Eigen::MatrixXd::Identity(m.rows(), m.cols());
    }
    return mats;
  };

  // Value of -t/mu + barrier if strictly feasible, nullopt otherwise.
  auto objective = [&](const Eigen::VectorXd& xv, double tv,
                       const std::vector<Eigen::MatrixXd>& mats)
      -> std::optional<double> {
    if (xv.cwiseAbs().maxCoeff() >= bound || tv >= t_cap) return std::nullopt;
    double value = -tv / mu - std::log(t_cap - tv);
    for (int i = 0; i < d; ++i) {
      value -= std::log(bound - xv(i)) + std::log(bound + xv(i));
    }
    for (const auto& m : mats) {
      Eigen::LLT<Eigen::MatrixXd> llt(m);
      if (llt.info() != Eigen::Success) return std::nullopt;
      value -= log_det_from_llt(llt);
    }
    return value;
  };

  while (true) {
    const bool final_stage = mu <= mu_min;
    const double tol = final_stage ? 1e-9 : 0.05;
    int inner = 0;
    bool stalled = false;
    while (newton_used < options.max_newton && inner < 30) {
      const auto mats = shifted_blocks(x, t);
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(d + 1);
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(d + 1, d + 1);
      for (std::size_t j = 0; j < nb; ++j) {
        const Eigen::MatrixXd w = mats[j].llt().solve(
            Eigen::MatrixXd::Identity(mats[j].rows(), mats[j].cols()));
        std::vector<Eigen::MatrixXd> wa(d);
        for (int i = 0; i < d; ++i) wa[i] = w * problem.blocks[j].coeffs[i];
        for (int i = 0; i < d; ++i) {
          grad(i) -= wa[i].trace();
          for (int k = i; k < d; ++k) {
            hess(i, k) += wa[i].cwiseProduct(wa[k].transpose()).sum();
          }
        }
        grad(d) += w.trace();
        const Eigen::MatrixXd w2 = w * w;
        for (int i = 0; i < d; ++i) {
          hess(i, d) -= w2.cwiseProduct(problem.blocks[j].coeffs[i]).sum();
        }
        hess(d, d) += w2.trace();
      }
      for (int i = 0; i < d; ++i) {
        grad(i) += 1.0 / (bound - x(i)) - 1.0 / (bound + x(i));
        hess(i, i) += 1.0 / ((bound - x(i)) * (bound - x(i))) +
                      1.0 / ((bound + x(i)) * (bound + x(i)));
      }
      grad(d) += 1.0 / (t_cap - t);
      hess(d, d) += 1.0 / ((t_cap - t) * (t_cap - t));
      const Eigen::MatrixXd hess_full = hess.selfadjointView<Eigen::Upper>();
      grad(d) -= 1.0 / mu;

      const Eigen::VectorXd step_dir = hess_full.ldlt().solve(-grad);
      const double decrement = -grad.dot(step_dir);
      if (decrement / 2.0 <= tol) break;

      const auto f0 = objective(x, t, mats);
      if (!f0) throw std::runtime_error("barrier iterate left the domain");
      const double slope = grad.dot(step_dir);
      double step = 1.0;
      bool accepted = false;
      while (step > 1e-14) {
        const Eigen::VectorXd x_next = x + step * step_dir.head(d);
        const double t_next = t + step * step_dir(d);
        const auto f_next = objective(x_next, t_next,
                                      shifted_blocks(x_next, t_next));
        if (f_next && *f_next <= *f0 + 0.01 * step * slope) {
          x = x_next;
          t = t_next;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        stalled = true;
        break;
      }
      ++newton_used;
      ++inner;
    }
    if (newton_used >= options.max_newton || inner >= 30) {
      if (!(final_stage || stalled)) converged = false;
      break;
    }
    if (final_stage) break;
    mu = std::max(mu / 10.0, mu_min * 0.999);
  }

  FeasibilityReport report;
  report.iterations = newton_used;
  report.converged = converged;
  report.margin = eval_constraints(problem, x).minCoeff();

  if (!converged) {
    report.verdict = Feasibility::kMarginal;
    report.diagnostic = "newton budget exhausted before path convergence";
    return report;
  }

  if (report.margin >= options.delta_feas) {
    report.verdict = Feasibility::kFeasible;
    report.witness = x;
    return report;
  }

  if (report.margin <= -options.epsilon) {
    // Scaled inverses of the slack blocks approximate the dual optimum.
    const auto mats = shifted_blocks(x, t);
    std::vector<Eigen::MatrixXd> dual;
    double trace_sum = 0.0;
    for (const auto& m : mats) {
      Eigen::MatrixXd w = m.llt().solve(
          Eigen::MatrixXd::Identity(m.rows(), m.cols()));
      trace_sum += w.trace();
      dual.push_back(std::move(w));
    }
    if (trace_sum > 0.0) {
      for (auto& z : dual) z /= trace_sum;
      polish_certificate(problem, dual);
      InfeasibilityCertificate cert;
      cert.dual_blocks = std::move(dual);
      const CertificateCheck check = verify_certificate(problem, cert);
      cert.delta_cert = check.slack;
      if (check.valid) {
        report.verdict = Feasibility::kInfeasible;
        report.certificate = std::move(cert);
        return report;
      }
    }
    report.verdict = Feasibility::kMarginal;
    report.diagnostic = "infeasible margin but certificate failed validation";
    return report;
  }

  report.verdict = Feasibility::kMarginal;
  report.diagnostic = "optimum inside the marginal band";
  return report;
}

}  // namespace gsep
