#include "gsep/boundsearch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsep {

void SearchConfig::validate() const {
  if (n_modes < 2) {
    throw std::invalid_argument("search needs at least two modes");
  }
  if (partition.total() != n_modes) {
    throw std::invalid_argument("search partition must cover all modes");
  }
  if (partition.modes_a < 1 || partition.modes_b < 1) {
    throw std::invalid_argument("both partition sides need at least one mode");
  }
  if (nu_range[0] < 1.0 || nu_range[1] < nu_range[0]) {
    throw std::invalid_argument("thermal range must satisfy 1 <= lo <= hi");
  }
  if (r_range[0] < 0.0 || r_range[1] < r_range[0]) {
    throw std::invalid_argument("squeezing range must satisfy 0 <= lo <= hi");
  }
  if (max_candidates < 1) {
    throw std::invalid_argument("search needs at least one candidate");
  }
  if (fixed_nu && fixed_nu->size() != n_modes) {
    throw std::invalid_argument("pinned thermal spectrum has wrong length");
  }
  if (fixed_r && fixed_r->size() != n_modes) {
    throw std::invalid_argument("pinned squeezing vector has wrong length");
  }
  if (fixed_unitary && (fixed_unitary->rows() != n_modes ||
                        fixed_unitary->cols() != n_modes)) {
    throw std::invalid_argument("pinned unitary has wrong shape");
  }
}

const Eigen::MatrixXcd& reference_unitary() {
  static const Eigen::MatrixXcd q = [] {
    const double h = std::sqrt(2.0) / 2.0;
    const double q4 = std::sqrt(2.0) / 4.0;
    Eigen::MatrixXd real(4, 4);
    real <<  h,   q4, -q4, 0.5,
             0.0, h,   h,  0.0,
             0.0, -0.5, 0.5, h,
            -h,   q4, -q4, 0.5;
    return Eigen::MatrixXcd(real.cast<std::complex<double>>());
  }();
  return q;
}

GaussianRecipe reference_recipe() {
  GaussianRecipe recipe;
  recipe.nu = Eigen::Vector4d(1.01, 1.01, 3.2, 3.2);
  recipe.L = Eigen::MatrixXd::Identity(8, 8);
  const double r = std::log(1.1);
  recipe.r = Eigen::Vector4d(-r, r, -r, r);
  recipe.q_unitary = reference_unitary();
  return recipe;
}

SearchHit reference_example() {
  const GaussianRecipe recipe = reference_recipe();
  const CovarianceMatrix gamma = compose_covariance(recipe);
  Classification cls = classify(gamma, ModePartition{2, 2});
  if (cls.state_class != StateClass::kBoundEntangled) {
    throw std::runtime_error(
        "reference bound-entangled construction classified as " +
        to_string(cls.state_class));
  }
  const double robustness = cls.ppt_min_eig;
  return SearchHit{-1, recipe, gamma, std::move(cls), robustness};
}

Eigen::MatrixXcd haar_unitary(int n, rng::Stream& stream) {
  Eigen::MatrixXcd z(n, n);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const double re = stream.normal();
      const double im = stream.normal();
      z(row, col) = std::complex<double>(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int col = 0; col < n; ++col) {
    const std::complex<double> pivot = r(col, col);
    const double magnitude = std::abs(pivot);
    if (magnitude > 0.0) q.col(col) *= pivot / magnitude;
  }
  return q;
}

GaussianRecipe random_candidate(const SearchConfig& config,
                                std::uint64_t index) {
  config.validate();
  rng::Stream stream = rng::Stream::derive(config.seed, index);
  const int n = config.n_modes;
  GaussianRecipe recipe;

  if (config.fixed_nu) {
    recipe.nu = *config.fixed_nu;
  } else {
    recipe.nu.resize(n);
    for (int k = 0; k < n; ++k) {
      recipe.nu(k) = stream.uniform(config.nu_range[0], config.nu_range[1]);
    }
    std::sort(recipe.nu.data(), recipe.nu.data() + n);
  }

  if (config.fixed_r) {
    recipe.r = *config.fixed_r;
  } else {
    recipe.r.resize(n);
    for (int k = 0; k < n; ++k) {
      const double magnitude =
          stream.uniform(config.r_range[0], config.r_range[1]);
      const double sign = stream.uniform() < 0.5 ? -1.0 : 1.0;
      recipe.r(k) = sign * magnitude;
    }
  }

  if (config.l_policy == PassivePolicy::kRandom) {
    recipe.L = unitary_to_symplectic(haar_unitary(n, stream));
  } else {
    recipe.L = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  }

  if (config.fixed_unitary) {
    recipe.q_unitary = *config.fixed_unitary;
  } else {
    recipe.q_unitary = haar_unitary(n, stream);
  }
  return recipe;
}

SearchSummary search(const SearchConfig& config) {
  config.validate();
  SearchSummary summary;
  summary.n_candidates = config.max_candidates;
  for (int index = 0; index < config.max_candidates; ++index) {
    const GaussianRecipe recipe =
        random_candidate(config, static_cast<std::uint64_t>(index));
    const CovarianceMatrix gamma = compose_covariance(recipe);
    Classification cls =
        classify(gamma, config.partition, config.classify_options);
    switch (cls.state_class) {
      case StateClass::kSeparable: ++summary.n_separable; break;
      case StateClass::kNptEntangled: ++summary.n_npt; break;
      case StateClass::kBoundEntangled: ++summary.n_bound; break;
      case StateClass::kMarginal: ++summary.n_marginal; break;
      case StateClass::kUnphysical: ++summary.n_unphysical; break;
    }
    if (cls.state_class == StateClass::kBoundEntangled) {
      const double robustness = cls.ppt_min_eig;
      summary.hits.push_back(
          SearchHit{index, recipe, gamma, std::move(cls), robustness});
    }
  }
  std::stable_sort(summary.hits.begin(), summary.hits.end(),
                   [](const SearchHit& a, const SearchHit& b) {
                     if (a.robustness != b.robustness) {
                       return a.robustness > b.robustness;
                     }
                     return a.candidate_index < b.candidate_index;
                   });
  return summary;
}

GaussianRecipe perturb_recipe(const GaussianRecipe& recipe, double scale,
                              rng::Stream& stream) {
  GaussianRecipe out = recipe;
  const int n = static_cast<int>(recipe.nu.size());
  for (int k = 0; k < n; ++k) {
    out.nu(k) = std::max(1.0, recipe.nu(k) + scale * stream.normal());
    out.r(k) = recipe.r(k) + scale * stream.normal();
  }
  Eigen::MatrixXcd noisy = recipe.q_unitary;
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      noisy(row, col) += scale * std::complex<double>(stream.normal(),
                                                      stream.normal());
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(noisy);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r_factor = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int col = 0; col < n; ++col) {
    const std::complex<double> pivot = r_factor(col, col);
    const double magnitude = std::abs(pivot);
    if (magnitude > 0.0) q.col(col) *= pivot / magnitude;
  }
  out.q_unitary = q;
  return out;
}

}  // namespace gsep
