#pragma once

#include <vector>

#include "gsep/symplectic.hpp"

namespace gsep {

/// Two-mode beam splitter with mixing angle and relative phase; the
/// mode-space block on (mode_i, mode_j) is
///   [[cos a, e^{i p} sin a], [-e^{-i p} sin a, cos a]].
/// A 50:50 splitter has |angle| = pi/4.
struct BeamSplitterOp {
  int mode_i;
  int mode_j;
  double angle;
  double phase;
};

/// N x N mode-space unitary of a single beam splitter.
Eigen::MatrixXcd beam_splitter_unitary(const BeamSplitterOp& op, int n_modes);

/// Product B(ops[0]) ... B(ops[last]) diag(e^{i phases}).
Eigen::MatrixXcd network_unitary(const std::vector<BeamSplitterOp>& ops,
                                 const Eigen::VectorXd& phases, int n_modes);

struct PassiveNetwork {
  std::vector<BeamSplitterOp> ops;
  Eigen::VectorXd residual_phases;  ///< per-mode output phases
};

/// Triangular beam-splitter factorization of a unitary: at most
/// N(N-1)/2 ops, identity ops pruned, phases snapped to {0, pi} when within
/// 1e-10 (pi beam-splitter phases folded into the sign of the angle).
/// Requires Q unitary within 1e-10.
PassiveNetwork synthesize_passive(const Eigen::MatrixXcd& q);

struct NetworkCheck {
  bool match;
  double residual;  ///< max-norm deviation from the target
};

/// Compares the network product against a target unitary.
NetworkCheck verify_network(const std::vector<BeamSplitterOp>& ops,
                            const Eigen::VectorXd& phases,
                            const Eigen::MatrixXcd& target,
                            double tol = 1e-10);

struct ModeSqueezer {
  int mode;
  double r;
};

/// Preparation circuit: thermal inputs pass through the inner beam-splitter
/// layer, per-mode squeezers, per-mode phases, and the outer layer.
struct CircuitDescription {
  int n_modes = 0;
  Eigen::VectorXd thermal_inputs;  ///< symplectic spectrum, one entry per mode
  std::vector<BeamSplitterOp> pre_layer;
  std::vector<ModeSqueezer> squeezers;  ///< modes with zero r omitted
  Eigen::VectorXd phases;               ///< applied between squeezers and post layer
  std::vector<BeamSplitterOp> post_layer;
};

/// Circuit preparing compose_covariance(recipe). The inner layer's residual
/// phases are dropped: they act directly on the thermal inputs, which are
/// invariant under per-mode rotations.
CircuitDescription synthesize_circuit(const GaussianRecipe& recipe);

/// Covariance matrix prepared by the circuit. Rejects malformed circuits
/// (mode indexes out of range, thermal inputs below 1) with
/// std::invalid_argument.
CovarianceMatrix replay_circuit(const CircuitDescription& circuit);

}  // namespace gsep
