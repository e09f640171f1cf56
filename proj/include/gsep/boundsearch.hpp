#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "gsep/rng.hpp"
#include "gsep/separability.hpp"
#include "gsep/symplectic.hpp"

namespace gsep {

/// How the inner passive layer L of sampled recipes is chosen.
enum class PassivePolicy { kIdentity, kRandom };

struct SearchConfig {
  int n_modes = 4;
  ModePartition partition{2, 2};
  /// Thermal spectrum sampling interval; lower bound must be >= 1.
  std::array<double, 2> nu_range{1.01, 4.0};
  /// Squeezing magnitude interval (signs are sampled separately).
  std::array<double, 2> r_range{0.0, 0.3};
  PassivePolicy l_policy = PassivePolicy::kIdentity;
  std::uint64_t seed = 0;
  int max_candidates = 100;
  ClassifyOptions classify_options;
  /// Optional pins replacing the corresponding sampled factor in every
  /// candidate (used to drive the search through a known construction).
  std::optional<Eigen::VectorXd> fixed_nu;
  std::optional<Eigen::VectorXd> fixed_r;
  std::optional<Eigen::MatrixXcd> fixed_unitary;

  void validate() const;
};

struct SearchHit {
  /// Sampling index of the candidate; -1 for the built-in reference state.
  int candidate_index;
  GaussianRecipe recipe;
  CovarianceMatrix gamma;
  Classification classification;
  /// Smallest eigenvalue of the PPT test matrix: how far inside the PPT
  /// cone the bound-entangled state sits.
  double robustness;
};

struct SearchSummary {
  std::vector<SearchHit> hits;  ///< bound-entangled finds, best first
  int n_candidates = 0;
  int n_separable = 0;
  int n_npt = 0;
  int n_bound = 0;
  int n_marginal = 0;
  int n_unphysical = 0;
};

/// The 4-mode outer passive unitary of the built-in bound-entangled
/// reference construction.
const Eigen::MatrixXcd& reference_unitary();

/// The recipe of the built-in 2+2-mode bound-entangled state.
GaussianRecipe reference_recipe();

/// Composes and classifies the reference state. Throws std::runtime_error
/// if it no longer classifies as BOUND_ENTANGLED: that is a regression.
SearchHit reference_example();

/// Haar-distributed unitary drawn from the stream (QR of a complex
/// Gaussian matrix with the phase convention fixed by the R diagonal).
Eigen::MatrixXcd haar_unitary(int n, rng::Stream& stream);

/// Candidate recipe for the given sampling index; identical (seed, index)
/// pairs give identical recipes regardless of evaluation order.
GaussianRecipe random_candidate(const SearchConfig& config,
                                std::uint64_t index);

/// Samples max_candidates recipes, classifies each, and collects the
/// bound-entangled ones sorted by robustness (most robust first, ties by
/// sampling index). Deterministic for a fixed config.
SearchSummary search(const SearchConfig& config);

/// Recipe with noise of the given scale on nu (kept >= 1), r, and the
/// outer unitary (re-orthonormalized); for sensitivity sweeps around a hit.
GaussianRecipe perturb_recipe(const GaussianRecipe& recipe, double scale,
                              rng::Stream& stream);

}  // namespace gsep
