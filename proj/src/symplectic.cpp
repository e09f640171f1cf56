#include "gsep/symplectic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gsep {

namespace {

/// Columns of `basis` with index < count are orthonormal; removes their
/// components from v (two passes for numerical hygiene).
void project_out(const Eigen::MatrixXd& basis, int count, Eigen::VectorXd& v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < count; ++j) {
      v -= basis.col(j).dot(v) * basis.col(j);
    }
  }
}

void canonicalize_pair_sign(Eigen::VectorXd& u, Eigen::VectorXd& w) {
  int pivot = 0;
  u.cwiseAbs().maxCoeff(&pivot);
  if (u(pivot) < 0.0) {
    u = -u;
    w = -w;
  }
}

}  // namespace

Eigen::MatrixXd reordering_permutation(int n_modes) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    p(2 * k, k) = 1.0;
    p(2 * k + 1, n_modes + k) = 1.0;
  }
  return p;
}

double symplectic_residual(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) {
    throw std::invalid_argument("symplectic matrices are even-dimensional square");
  }
  const Eigen::MatrixXd omega = symplectic_form(static_cast<int>(s.rows()) / 2);
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Eigen::MatrixXd& s, double tol) {
  return symplectic_residual(s) <= tol;
}

WilliamsonForm williamson_decompose(const CovarianceMatrix& gamma) {
  const int n = gamma.n_modes();
  const int d = 2 * n;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gamma_eig(gamma.matrix());
  if (gamma_eig.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on covariance matrix");
  }
  if (gamma_eig.eigenvalues().minCoeff() <= 1e-12) {
    throw std::invalid_argument(
        "Williamson form needs a positive definite covariance matrix");
  }
  const Eigen::MatrixXd v = gamma_eig.eigenvectors();
  const Eigen::VectorXd lam = gamma_eig.eigenvalues();
  const Eigen::MatrixXd sqrt_gamma =
      v * lam.cwiseSqrt().asDiagonal() * v.transpose();
  const Eigen::MatrixXd isqrt_gamma =
      v * lam.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();

  // B is antisymmetric with eigenvalues +-i/nu_k; pairs are extracted from
  // the symmetric square C = -B^2 whose eigenspaces are the pair planes.
  Eigen::MatrixXd b = isqrt_gamma * symplectic_form(n) * isqrt_gamma;
  b = 0.5 * (b - b.transpose().eval());
  Eigen::MatrixXd c = -b * b;
  c = 0.5 * (c + c.transpose().eval());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> c_eig(c);
  if (c_eig.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on Williamson pair planes");
  }

  Eigen::MatrixXd basis(d, d);
  Eigen::VectorXd mu(n);
  int pairs = 0;
  // Descending eigenvalues of C give descending mu, hence ascending nu.
  for (int i = d - 1; i >= 0 && pairs < n; --i) {
    Eigen::VectorXd u = c_eig.eigenvectors().col(i);
    project_out(basis, 2 * pairs, u);
    if (u.norm() < 0.3) continue;  // plane already covered by a partner
    u.normalize();
    Eigen::VectorXd w = -b * u;
    project_out(basis, 2 * pairs, w);
    w -= u.dot(w) * u;
    const double norm_w = w.norm();
    if (norm_w < 1e-14) {
      throw std::runtime_error("degenerate Williamson pair plane");
    }
    w /= norm_w;
    canonicalize_pair_sign(u, w);
    const double mu_k = u.dot(b * w);
    if (mu_k <= 0.0) {
      throw std::runtime_error("Williamson pair with non-positive frequency");
    }
    basis.col(2 * pairs) = u;
    basis.col(2 * pairs + 1) = w;
    mu(pairs) = mu_k;
    ++pairs;
  }
  if (pairs != n) {
    throw std::runtime_error("Williamson pair extraction incomplete");
  }

  Eigen::VectorXd scale(d);
  Eigen::VectorXd nu(n);
  for (int k = 0; k < n; ++k) {
    nu(k) = 1.0 / mu(k);
    scale(2 * k) = scale(2 * k + 1) = std::sqrt(mu(k));
  }
  WilliamsonForm form;
  form.nu = nu;
  form.S = sqrt_gamma * basis * scale.asDiagonal();

  Eigen::VectorXd nu_diag(d);
  for (int k = 0; k < n; ++k) nu_diag(2 * k) = nu_diag(2 * k + 1) = nu(k);
  const double recomposition =
      (form.S * nu_diag.asDiagonal() * form.S.transpose() - gamma.matrix())
          .norm();
  if (recomposition > 1e-8 * (1.0 + gamma.matrix().norm()) ||
      symplectic_residual(form.S) > 1e-9) {
    throw std::runtime_error("Williamson factorization failed to validate");
  }
  return form;
}

EulerForm euler_decompose(const Eigen::MatrixXd& s) {
  if (symplectic_residual(s) > 1e-8) {
    throw std::invalid_argument("Euler form needs a symplectic matrix");
  }
  const int d = static_cast<int>(s.rows());
  const int n = d / 2;
  const Eigen::MatrixXd omega = symplectic_form(n);

  Eigen::MatrixXd m = s * s.transpose();
  m = 0.5 * (m + m.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> m_eig(m);
  if (m_eig.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on Euler form");
  }

  // Eigenvalues of M = S S^T pair as (lambda, 1/lambda); for u in the
  // lambda-eigenspace, -Omega u lies exactly in the 1/lambda-eigenspace.
  // Ascending lambda seeds give descending r = -log(lambda)/2 >= 0.
  Eigen::MatrixXd basis(d, d);
  Eigen::VectorXd r(n);
  int pairs = 0;
  for (int i = 0; i < d && pairs < n; ++i) {
    Eigen::VectorXd u = m_eig.eigenvectors().col(i);
    project_out(basis, 2 * pairs, u);
    if (u.norm() < 0.3) continue;
    u.normalize();
    Eigen::VectorXd w = -omega * u;
    canonicalize_pair_sign(u, w);
    basis.col(2 * pairs) = u;
    basis.col(2 * pairs + 1) = w;
    r(pairs) = std::max(0.0, -0.5 * std::log(u.dot(m * u)));
    ++pairs;
  }
  if (pairs != n) {
    throw std::runtime_error("Euler pair extraction incomplete");
  }

  EulerForm form;
  form.K = basis;
  form.r = r;
  form.L = squeezer_direct_sum(-r) * basis.transpose() * s;

  const double k_orth = (form.K.transpose() * form.K -
                         Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  const double l_orth = (form.L.transpose() * form.L -
                         Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  const double recomposition =
      (form.K * squeezer_direct_sum(r) * form.L - s).norm();
  if (k_orth > 1e-10 || symplectic_residual(form.K) > 1e-10 ||
      l_orth > 1e-10 || symplectic_residual(form.L) > 1e-10 ||
      recomposition > 1e-8 * (1.0 + s.norm())) {
    throw std::runtime_error("Euler factorization failed to validate");
  }
  return form;
}

Eigen::MatrixXd squeezer_direct_sum(const Eigen::VectorXd& r) {
  const int n = static_cast<int>(r.size());
  Eigen::VectorXd diag(2 * n);
  for (int k = 0; k < n; ++k) {
    diag(2 * k) = std::exp(-r(k));
    diag(2 * k + 1) = std::exp(r(k));
  }
  return diag.asDiagonal();
}

Eigen::MatrixXd unitary_to_symplectic(const Eigen::MatrixXcd& q) {
  if (q.rows() != q.cols() || q.rows() == 0) {
    throw std::invalid_argument("mode-space unitary must be square");
  }
  const int n = static_cast<int>(q.rows());
  const double unitarity =
      (q.adjoint() * q - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-10) {
    throw std::invalid_argument("mode-space matrix is not unitary (deviation " +
                                std::to_string(unitarity) + ")");
  }
  const Eigen::MatrixXd x = q.real();
  const Eigen::MatrixXd y = q.imag();
  Eigen::MatrixXd o(2 * n, 2 * n);
  o.topLeftCorner(n, n) = x;
  o.topRightCorner(n, n) = y;
  o.bottomLeftCorner(n, n) = -y;
  o.bottomRightCorner(n, n) = x;
  const Eigen::MatrixXd p = reordering_permutation(n);
  return p * o * p.transpose();
}

Eigen::MatrixXcd symplectic_to_unitary(const Eigen::MatrixXd& k, double tol) {
  if (k.rows() != k.cols() || k.rows() % 2 != 0 || k.rows() == 0) {
    throw std::invalid_argument("orthogonal symplectic matrices are even-dimensional");
  }
  const int n = static_cast<int>(k.rows()) / 2;
  const Eigen::MatrixXd p = reordering_permutation(n);
  const Eigen::MatrixXd o = p.transpose() * k * p;
  const Eigen::MatrixXd x = o.topLeftCorner(n, n);
  const Eigen::MatrixXd y = o.topRightCorner(n, n);
  const double structure =
      std::max((o.bottomLeftCorner(n, n) + y).cwiseAbs().maxCoeff(),
               (o.bottomRightCorner(n, n) - x).cwiseAbs().maxCoeff());
  if (structure > tol) {
    throw std::invalid_argument(
        "matrix lacks the passive block structure (deviation " +
        std::to_string(structure) + ")");
  }
  Eigen::MatrixXcd q = x.cast<std::complex<double>>() +
                       std::complex<double>(0.0, 1.0) * y;
  const double unitarity =
      (q.adjoint() * q - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unitarity > tol) {
    throw std::invalid_argument("recovered mode-space matrix is not unitary");
  }
  return q;
}

CovarianceMatrix compose_covariance(const GaussianRecipe& recipe) {
  const int n = static_cast<int>(recipe.nu.size());
  if (n < 1) {
    throw std::invalid_argument("recipe needs at least one mode");
  }
  if (recipe.r.size() != n || recipe.L.rows() != 2 * n ||
      recipe.L.cols() != 2 * n || recipe.q_unitary.rows() != n ||
      recipe.q_unitary.cols() != n) {
    throw std::invalid_argument("recipe factor shapes are inconsistent");
  }
  if (recipe.nu.minCoeff() < 1.0 - 1e-12) {
    throw std::invalid_argument("thermal spectrum entries must be >= 1");
  }
  const double l_orth =
      (recipe.L.transpose() * recipe.L -
       Eigen::MatrixXd::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff();
  if (l_orth > 1e-8 || symplectic_residual(recipe.L) > 1e-8) {
    throw std::invalid_argument("inner layer is not orthogonal symplectic");
  }

  const Eigen::MatrixXd k = unitary_to_symplectic(recipe.q_unitary);
  const Eigen::MatrixXd m = k * squeezer_direct_sum(recipe.r) * recipe.L;
  Eigen::VectorXd nu_diag(2 * n);
  for (int i = 0; i < n; ++i) {
    nu_diag(2 * i) = nu_diag(2 * i + 1) = recipe.nu(i);
  }
  Eigen::MatrixXd gamma = m * nu_diag.asDiagonal() * m.transpose();
  gamma = 0.5 * (gamma + gamma.transpose().eval());
  return CovarianceMatrix(n, gamma);
}

}  // namespace gsep
