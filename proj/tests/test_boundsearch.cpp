#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "gsep/boundsearch.hpp"
#include "test_support.hpp"

using gsep::PassivePolicy;
using gsep::SearchConfig;
using gsep::StateClass;

TEST_CASE("haar unitary sampling") {
  gsep::rng::Stream stream(51);
  const Eigen::MatrixXcd q = gsep::haar_unitary(4, stream);
  CHECK(test_support::max_abs_diff(q * q.adjoint(),
                                   Eigen::MatrixXcd::Identity(4, 4)) < 1e-13);
  gsep::rng::Stream replay(51);
  CHECK(test_support::max_abs_diff(q, gsep::haar_unitary(4, replay)) == 0.0);
}

TEST_CASE("reference construction") {
  const Eigen::MatrixXcd& q = gsep::reference_unitary();
  CHECK(q.imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(test_support::max_abs_diff(q * q.adjoint(),
                                   Eigen::MatrixXcd::Identity(4, 4)) < 1e-14);

  const auto recipe = gsep::reference_recipe();
  REQUIRE(recipe.nu.size() == 4);
  CHECK(recipe.nu(0) == doctest::Approx(1.01));
  CHECK(recipe.nu(3) == doctest::Approx(3.2));
  CHECK(test_support::max_abs_diff(recipe.L,
                                   Eigen::MatrixXd::Identity(8, 8)) == 0.0);
  CHECK(recipe.r(0) == doctest::Approx(-std::log(1.1)));
  CHECK(recipe.r(1) == doctest::Approx(std::log(1.1)));

  const auto hit = gsep::reference_example();
  CHECK(hit.candidate_index == -1);
  CHECK(hit.classification.state_class == StateClass::kBoundEntangled);
  CHECK(hit.robustness > 0.05);
  CHECK(hit.classification.certificate.has_value());
}

TEST_CASE("candidate sampling") {
  SearchConfig config;
  config.seed = 99;
  SUBCASE("same seed and index reproduce bitwise") {
    const auto first = gsep::random_candidate(config, 12);
    const auto second = gsep::random_candidate(config, 12);
    CHECK(test_support::max_abs_diff(first.L, second.L) == 0.0);
    CHECK((first.nu - second.nu).cwiseAbs().maxCoeff() == 0.0);
    CHECK((first.r - second.r).cwiseAbs().maxCoeff() == 0.0);
    CHECK(test_support::max_abs_diff(first.q_unitary, second.q_unitary) ==
          0.0);
  }
  SUBCASE("different indices differ") {
    const auto first = gsep::random_candidate(config, 0);
    const auto second = gsep::random_candidate(config, 1);
    CHECK((first.nu - second.nu).cwiseAbs().maxCoeff() > 0.0);
  }
  SUBCASE("draws respect the configured ranges") {
    for (std::uint64_t index = 0; index < 20; ++index) {
      const auto recipe = gsep::random_candidate(config, index);
      for (int k = 0; k < 4; ++k) {
        CHECK(recipe.nu(k) >= config.nu_range[0]);
        CHECK(recipe.nu(k) <= config.nu_range[1]);
        CHECK(std::abs(recipe.r(k)) <= config.r_range[1]);
      }
      for (int k = 0; k + 1 < 4; ++k) CHECK(recipe.nu(k) <= recipe.nu(k + 1));
      CHECK(test_support::max_abs_diff(recipe.L,
                                       Eigen::MatrixXd::Identity(8, 8)) ==
            0.0);
    }
  }
  SUBCASE("random inner layer policy produces orthogonal symplectics") {
    config.l_policy = PassivePolicy::kRandom;
    const auto recipe = gsep::random_candidate(config, 3);
    CHECK(test_support::max_abs_diff(recipe.L,
                                     Eigen::MatrixXd::Identity(8, 8)) > 0.0);
    CHECK(gsep::symplectic_residual(recipe.L) < 1e-12);
  }
  SUBCASE("pinned factors override sampling") {
    config.fixed_nu = Eigen::VectorXd::Constant(4, 1.5);
    config.fixed_r = Eigen::VectorXd::Zero(4);
    const auto recipe = gsep::random_candidate(config, 7);
    CHECK((recipe.nu.array() == 1.5).all());
    CHECK(recipe.r.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("config validation") {
  SearchConfig config;
  CHECK_NOTHROW(config.validate());
  SearchConfig bad = config;
  bad.nu_range = {0.5, 2.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.r_range = {-0.1, 0.2};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.partition = gsep::ModePartition{3, 2};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.max_candidates = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("search is deterministic") {
  SearchConfig config;
  config.seed = 5;
  config.max_candidates = 12;
  const auto first = gsep::search(config);
  const auto second = gsep::search(config);
  CHECK(first.n_candidates == second.n_candidates);
  CHECK(first.n_bound == second.n_bound);
  CHECK(first.n_separable == second.n_separable);
  CHECK(first.n_npt == second.n_npt);
  REQUIRE(first.hits.size() == second.hits.size());
  for (std::size_t k = 0; k < first.hits.size(); ++k) {
    CHECK(first.hits[k].candidate_index == second.hits[k].candidate_index);
    CHECK(first.hits[k].robustness == second.hits[k].robustness);
  }
}

TEST_CASE("search counts add up and hits are sorted by robustness") {
  SearchConfig config;
  config.seed = 2;
  config.max_candidates = 30;
  config.r_range = {0.0, 0.5};
  const auto summary = gsep::search(config);
  CHECK(summary.n_candidates == 30);
  CHECK(summary.n_separable + summary.n_npt + summary.n_bound +
            summary.n_marginal + summary.n_unphysical ==
        30);
  CHECK(static_cast<int>(summary.hits.size()) == summary.n_bound);
  for (std::size_t k = 0; k + 1 < summary.hits.size(); ++k)
    CHECK(summary.hits[k].robustness >= summary.hits[k + 1].robustness);
  for (const auto& hit : summary.hits) {
    CHECK(hit.classification.state_class == StateClass::kBoundEntangled);
    CHECK(hit.robustness > 0.0);
  }
}

TEST_CASE("degenerate vacuum configuration finds nothing") {
  SearchConfig config;
  config.max_candidates = 10;
  SUBCASE("slightly above vacuum everything is separable") {
    config.nu_range = {1.001, 1.001};
    config.r_range = {0.0, 0.0};
    const auto summary = gsep::search(config);
    CHECK(summary.hits.empty());
    CHECK(summary.n_separable == 10);
  }
  SUBCASE("exactly at vacuum nothing is bound entangled") {
    // vacuum states sit on the separability boundary, so candidates land
    // in SEPARABLE or MARGINAL depending on solver rounding
    config.nu_range = {1.0, 1.0};
    config.r_range = {0.0, 0.0};
    const auto summary = gsep::search(config);
    CHECK(summary.hits.empty());
    CHECK(summary.n_separable + summary.n_marginal == 10);
  }
}

TEST_CASE("pinned search reproduces the reference hit") {
  SearchConfig config;
  config.max_candidates = 1;
  const auto reference = gsep::reference_recipe();
  config.fixed_nu = reference.nu;
  config.fixed_r = reference.r;
  config.fixed_unitary = reference.q_unitary;
  const auto summary = gsep::search(config);
  REQUIRE(summary.hits.size() == 1);
  CHECK(summary.hits[0].classification.state_class ==
        StateClass::kBoundEntangled);
  const auto expected = gsep::reference_example();
  CHECK(std::abs(summary.hits[0].robustness - expected.robustness) < 1e-12);
}

TEST_CASE("perturbation keeps the recipe valid") {
  gsep::rng::Stream stream(61);
  const auto recipe = gsep::reference_recipe();
  const auto nudged = gsep::perturb_recipe(recipe, 1e-3, stream);
  CHECK((nudged.nu.array() >= 1.0).all());
  CHECK(test_support::max_abs_diff(
            nudged.q_unitary * nudged.q_unitary.adjoint(),
            Eigen::MatrixXcd::Identity(4, 4)) < 1e-12);
  CHECK((nudged.nu - recipe.nu).cwiseAbs().maxCoeff() < 1e-2);
  CHECK((nudged.nu - recipe.nu).cwiseAbs().maxCoeff() > 0.0);

  // zero scale keeps the recipe unchanged up to re-orthonormalization
  gsep::rng::Stream stream2(62);
  const auto same = gsep::perturb_recipe(recipe, 0.0, stream2);
  CHECK((same.nu - recipe.nu).cwiseAbs().maxCoeff() == 0.0);
  CHECK(test_support::max_abs_diff(same.q_unitary, recipe.q_unitary) < 1e-12);
}
