#include "gsep/circuit.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace gsep {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPhaseSnap = 1e-10;

void check_op_modes(const BeamSplitterOp& op, int n_modes) {
  if (op.mode_i < 0 || op.mode_i >= n_modes || op.mode_j < 0 ||
      op.mode_j >= n_modes || op.mode_i == op.mode_j) {
    throw std::invalid_argument("beam splitter modes out of range");
  }
}

/// Snaps a phase to 0 / +-pi when within the snap window and folds a pi
/// phase into the sign of the angle.
void canonicalize(BeamSplitterOp& op) {
  if (std::abs(op.phase) <= kPhaseSnap) {
    op.phase = 0.0;
  } else if (std::abs(op.phase - kPi) <= kPhaseSnap ||
             std::abs(op.phase + kPi) <= kPhaseSnap) {
    op.angle = -op.angle;
    op.phase = 0.0;
  }
}

}  // namespace

Eigen::MatrixXcd beam_splitter_unitary(const BeamSplitterOp& op, int n_modes) {
  check_op_modes(op, n_modes);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n_modes, n_modes);
  const double c = std::cos(op.angle);
  const double s = std::sin(op.angle);
  const std::complex<double> mix = std::polar(1.0, op.phase);
  u(op.mode_i, op.mode_i) = c;
  u(op.mode_i, op.mode_j) = mix * s;
  u(op.mode_j, op.mode_i) = -std::conj(mix) * s;
  u(op.mode_j, op.mode_j) = c;
  return u;
}

Eigen::MatrixXcd network_unitary(const std::vector<BeamSplitterOp>& ops,
                                 const Eigen::VectorXd& phases, int n_modes) {
  if (phases.size() != 0 && phases.size() != n_modes) {
    throw std::invalid_argument("phase vector needs one entry per mode");
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n_modes, n_modes);
  for (const auto& op : ops) u *= beam_splitter_unitary(op, n_modes);
  if (phases.size() == n_modes) {
    for (int k = 0; k < n_modes; ++k) {
      u.col(k) *= std::polar(1.0, phases(k));
    }
  }
  return u;
}

PassiveNetwork synthesize_passive(const Eigen::MatrixXcd& q) {
  const int n = static_cast<int>(q.rows());
  if (n == 0 || q.cols() != n) {
    throw std::invalid_argument("passive synthesis needs a square unitary");
  }
  const double unitarity =
      (q.adjoint() * q - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-10) {
    throw std::invalid_argument("passive synthesis needs a unitary matrix");
  }

  // Column-by-column elimination: mixing rows (col, row) with
  // theta = atan2(|b|, |a|), phase = arg(a) - arg(b) zeroes entry (row, col)
  // while completed columns only recombine zeros.
  Eigen::MatrixXcd u = q;
  PassiveNetwork network;
  for (int col = 0; col < n - 1; ++col) {
    for (int row = col + 1; row < n; ++row) {
      const std::complex<double> a = u(col, col);
      const std::complex<double> b = u(row, col);
      if (std::abs(b) <= 1e-14) continue;
      const double theta = std::atan2(std::abs(b), std::abs(a));
      const double phase =
          (std::abs(a) > 0.0 ? std::arg(a) : 0.0) - std::arg(b);
      const BeamSplitterOp eliminator{col, row, theta, phase};
      u = beam_splitter_unitary(eliminator, n) * u;
      BeamSplitterOp inverse{col, row, -theta, phase};
      canonicalize(inverse);
      network.ops.push_back(inverse);
    }
  }

  network.residual_phases.resize(n);
  for (int k = 0; k < n; ++k) {
    double psi = std::arg(u(k, k));
    if (std::abs(psi) <= kPhaseSnap) {
      psi = 0.0;
    } else if (std::abs(psi - kPi) <= kPhaseSnap) {
      psi = kPi;
    } else if (std::abs(psi + kPi) <= kPhaseSnap) {
      psi = kPi;
    }
    network.residual_phases(k) = psi;
  }
  return network;
}

NetworkCheck verify_network(const std::vector<BeamSplitterOp>& ops,
                            const Eigen::VectorXd& phases,
                            const Eigen::MatrixXcd& target, double tol) {
  const int n = static_cast<int>(target.rows());
  if (n == 0 || target.cols() != n) {
    throw std::invalid_argument("network target must be square");
  }
  const Eigen::MatrixXcd produced = network_unitary(ops, phases, n);
  const double residual = (produced - target).cwiseAbs().maxCoeff();
  return {residual <= tol, residual};
}

CircuitDescription synthesize_circuit(const GaussianRecipe& recipe) {
  const int n = static_cast<int>(recipe.nu.size());
  if (n < 1 || recipe.r.size() != n) {
    throw std::invalid_argument("recipe factor shapes are inconsistent");
  }

  CircuitDescription circuit;
  circuit.n_modes = n;
  circuit.thermal_inputs = recipe.nu;

  const PassiveNetwork inner =
      synthesize_passive(symplectic_to_unitary(recipe.L));
  circuit.pre_layer = inner.ops;  // residual phases act on thermal inputs only

  for (int k = 0; k < n; ++k) {
    if (std::abs(recipe.r(k)) > 1e-14) {
      circuit.squeezers.push_back(ModeSqueezer{k, recipe.r(k)});
    }
  }

  const PassiveNetwork outer = synthesize_passive(recipe.q_unitary);
  circuit.phases = outer.residual_phases;
  circuit.post_layer = outer.ops;
  return circuit;
}

CovarianceMatrix replay_circuit(const CircuitDescription& circuit) {
  const int n = circuit.n_modes;
  if (n < 1) {
    throw std::invalid_argument("circuit needs at least one mode");
  }
  if (circuit.thermal_inputs.size() != n) {
    throw std::invalid_argument("circuit needs one thermal input per mode");
  }
  if (!circuit.thermal_inputs.allFinite() ||
      circuit.thermal_inputs.minCoeff() < 1.0 - 1e-12) {
    throw std::invalid_argument("thermal inputs must be >= 1");
  }
  if (circuit.phases.size() != 0 && circuit.phases.size() != n) {
    throw std::invalid_argument("circuit phases need one entry per mode");
  }
  for (const auto& op : circuit.pre_layer) check_op_modes(op, n);
  for (const auto& op : circuit.post_layer) check_op_modes(op, n);

  Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
  for (const auto& squeezer : circuit.squeezers) {
    if (squeezer.mode < 0 || squeezer.mode >= n) {
      throw std::invalid_argument("squeezer mode out of range");
    }
    r(squeezer.mode) += squeezer.r;
  }

  auto layer_symplectic = [n](const std::vector<BeamSplitterOp>& ops) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
    for (const auto& op : ops) u *= beam_splitter_unitary(op, n);
    return unitary_to_symplectic(u);
  };

  Eigen::MatrixXcd phase_unitary = Eigen::MatrixXcd::Identity(n, n);
  if (circuit.phases.size() == n) {
    for (int k = 0; k < n; ++k) {
      phase_unitary(k, k) = std::polar(1.0, circuit.phases(k));
    }
  }

  const Eigen::MatrixXd total = layer_symplectic(circuit.post_layer) *
                                unitary_to_symplectic(phase_unitary) *
                                squeezer_direct_sum(r) *
                                layer_symplectic(circuit.pre_layer);
  Eigen::VectorXd nu_diag(2 * n);
  for (int k = 0; k < n; ++k) {
    nu_diag(2 * k) = nu_diag(2 * k + 1) = circuit.thermal_inputs(k);
  }
  Eigen::MatrixXd gamma = total * nu_diag.asDiagonal() * total.transpose();
  gamma = 0.5 * (gamma + gamma.transpose().eval());
  return CovarianceMatrix(n, gamma);
}

}  // namespace gsep
