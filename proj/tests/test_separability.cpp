#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "gsep/separability.hpp"
#include "test_support.hpp"

using gsep::CovarianceMatrix;
using gsep::ModePartition;
using gsep::StateClass;

namespace {

Eigen::MatrixXd two_mode_squeezed(double r) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Eigen::MatrixXd gamma(4, 4);
  gamma << c, 0, s, 0,
           0, c, 0, -s,
           s, 0, c, 0,
           0, -s, 0, c;
  return gamma;
}

}  // namespace

TEST_CASE("problem dimensions follow the upper-triangle count") {
  SUBCASE("1 + 1 modes") {
    const auto problem = gsep::build_separability_problem(
        CovarianceMatrix::identity(2), ModePartition{1, 1});
    CHECK(problem.dim_a_vars == 3);
    CHECK(problem.dim_b_vars == 3);
    CHECK(problem.lmi.dim_vars == 6);
    REQUIRE(problem.lmi.blocks.size() == 3);
    CHECK(problem.lmi.blocks[0].constant.rows() == 4);
    CHECK(problem.lmi.blocks[1].constant.rows() == 4);
    CHECK(problem.lmi.blocks[2].constant.rows() == 4);
    CHECK_NOTHROW(problem.lmi.validate());
  }
  SUBCASE("2 + 2 modes") {
    const auto problem = gsep::build_separability_problem(
        CovarianceMatrix::identity(4), ModePartition{2, 2});
    CHECK(problem.dim_a_vars == 10);
    CHECK(problem.dim_b_vars == 10);
    CHECK(problem.lmi.dim_vars == 20);
    REQUIRE(problem.lmi.blocks.size() == 3);
    CHECK(problem.lmi.blocks[0].constant.rows() == 8);
    CHECK(problem.lmi.blocks[1].constant.rows() == 8);
    CHECK(problem.lmi.blocks[2].constant.rows() == 8);
  }
  SUBCASE("1 + 2 modes") {
    const auto problem = gsep::build_separability_problem(
        CovarianceMatrix::identity(3), ModePartition{1, 2});
    CHECK(problem.dim_a_vars == 3);
    CHECK(problem.dim_b_vars == 10);
    CHECK(problem.lmi.blocks[1].constant.rows() == 4);
    CHECK(problem.lmi.blocks[2].constant.rows() == 8);
  }
}

TEST_CASE("witness pack and unpack round trip") {
  gsep::rng::Stream stream(17);
  const auto problem = gsep::build_separability_problem(
      CovarianceMatrix::identity(3), ModePartition{1, 2});
  const CovarianceMatrix local_a =
      test_support::random_state(1, stream, 1.1, 1.8, 0.4);
  const CovarianceMatrix local_b =
      test_support::random_state(2, stream, 1.1, 1.8, 0.4);
  const Eigen::VectorXd x =
      gsep::pack_witness(problem, local_a.matrix(), local_b.matrix());
  REQUIRE(x.size() == 13);
  const auto [gamma_a, gamma_b] = gsep::unpack_witness(problem, x);
  CHECK(test_support::max_abs_diff(gamma_a, local_a.matrix()) == 0.0);
  CHECK(test_support::max_abs_diff(gamma_b, local_b.matrix()) == 0.0);
}

TEST_CASE("constraint evaluation at a packed witness matches the definition") {
  gsep::rng::Stream stream(18);
  Eigen::MatrixXd gamma_a;
  Eigen::MatrixXd gamma_b;
  const CovarianceMatrix gamma = test_support::planted_separable(
      ModePartition{1, 1}, stream, &gamma_a, &gamma_b);
  const auto problem =
      gsep::build_separability_problem(gamma, ModePartition{1, 1});
  const Eigen::VectorXd x = gsep::pack_witness(problem, gamma_a, gamma_b);
  const auto matrices = gsep::eval_matrices(problem.lmi, x);

  Eigen::MatrixXd direct_sum = Eigen::MatrixXd::Zero(4, 4);
  direct_sum.topLeftCorner(2, 2) = gamma_a;
  direct_sum.bottomRightCorner(2, 2) = gamma_b;
  CHECK(test_support::max_abs_diff(matrices[0],
                                   gamma.matrix() - direct_sum) < 1e-12);
  const Eigen::MatrixXd omega = gsep::symplectic_form(1);
  CHECK(test_support::max_abs_diff(
            matrices[1], gsep::hermitian_embedding(gamma_a, omega)) < 1e-12);
  CHECK(test_support::max_abs_diff(
            matrices[2], gsep::hermitian_embedding(gamma_b, omega)) < 1e-12);
}

TEST_CASE("validate witness") {
  gsep::rng::Stream stream(19);
  Eigen::MatrixXd gamma_a;
  Eigen::MatrixXd gamma_b;
  const ModePartition partition{1, 1};
  const CovarianceMatrix gamma =
      test_support::planted_separable(partition, stream, &gamma_a, &gamma_b);
  CHECK(gsep::validate_witness(gamma, partition, gamma_a, gamma_b));

  // inflating gamma_a breaks domination by gamma
  CHECK_FALSE(
      gsep::validate_witness(gamma, partition, 10.0 * gamma_a, gamma_b));
  // an unphysical local block fails even though domination improves
  CHECK_FALSE(
      gsep::validate_witness(gamma, partition, 0.1 * gamma_a, gamma_b));
  // shape mismatch is an error, not a negative verdict
  CHECK_THROWS_AS(gsep::validate_witness(gamma, partition,
                                         Eigen::MatrixXd::Identity(4, 4),
                                         gamma_b),
                  std::invalid_argument);
}

TEST_CASE("state class names round trip") {
  for (const auto state_class :
       {StateClass::kSeparable, StateClass::kNptEntangled,
        StateClass::kBoundEntangled, StateClass::kMarginal,
        StateClass::kUnphysical}) {
    CHECK(gsep::state_class_from_string(gsep::to_string(state_class)) ==
          state_class);
  }
  CHECK(gsep::to_string(StateClass::kBoundEntangled) == "BOUND_ENTANGLED");
  CHECK_THROWS_AS(gsep::state_class_from_string("bogus"),
                  std::invalid_argument);
}

TEST_CASE("classification chain") {
  const ModePartition partition{1, 1};
  SUBCASE("unphysical input short-circuits") {
    Eigen::MatrixXd m = 0.5 * Eigen::MatrixXd::Identity(4, 4);
    const auto result = gsep::classify(CovarianceMatrix(2, m), partition);
    CHECK(result.state_class == StateClass::kUnphysical);
    CHECK(result.physical_min_eig < -gsep::kTolPhys);
    CHECK(std::isnan(result.ppt_min_eig));
    CHECK(std::isnan(result.lmi_margin));
    CHECK_FALSE(result.diagnostic.empty());
  }
  SUBCASE("two mode squeezing is NPT") {
    const auto result =
        gsep::classify(CovarianceMatrix(2, two_mode_squeezed(0.6)), partition);
    CHECK(result.state_class == StateClass::kNptEntangled);
    CHECK(result.ppt_min_eig < -1e-3);
    CHECK(std::isnan(result.lmi_margin));
  }
  SUBCASE("noisy two mode squeezing turns separable") {
    Eigen::MatrixXd m =
        two_mode_squeezed(0.4) + Eigen::MatrixXd::Identity(4, 4);
    const auto result = gsep::classify(CovarianceMatrix(2, m), partition);
    CHECK(result.state_class == StateClass::kSeparable);
    CHECK(result.lmi_margin > 1e-7);
    REQUIRE(result.witness.has_value());
    CHECK(gsep::validate_witness(CovarianceMatrix(2, m), partition,
                                 result.witness->first,
                                 result.witness->second));
  }
  SUBCASE("product thermal state is separable") {
    Eigen::MatrixXd m = 1.5 * Eigen::MatrixXd::Identity(4, 4);
    const auto result = gsep::classify(CovarianceMatrix(2, m), partition);
    CHECK(result.state_class == StateClass::kSeparable);
    REQUIRE(result.witness.has_value());
  }
  SUBCASE("vacuum sits exactly on the separable boundary") {
    // gamma = I admits only gamma_A = gamma_B = I itself, with zero slack:
    // the LMI optimum is exactly 0, inside the marginal band by design
    const auto result =
        gsep::classify(CovarianceMatrix::identity(2), partition);
    CHECK(result.state_class == StateClass::kMarginal);
    CHECK(std::abs(result.lmi_margin) < 1e-6);
  }
}

TEST_CASE("planted separable states classify with validated witnesses") {
  gsep::rng::Stream stream(23);
  for (int trial = 0; trial < 5; ++trial) {
    const ModePartition partition =
        (trial % 2 == 0) ? ModePartition{1, 1} : ModePartition{2, 2};
    const CovarianceMatrix gamma =
        test_support::planted_separable(partition, stream);
    const auto result = gsep::classify(gamma, partition);
    CHECK(result.state_class == StateClass::kSeparable);
    REQUIRE(result.witness.has_value());
    CHECK(gsep::validate_witness(gamma, partition, result.witness->first,
                                 result.witness->second));
  }
}
