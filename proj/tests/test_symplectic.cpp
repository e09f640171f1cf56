#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "gsep/symplectic.hpp"
#include "test_support.hpp"

using gsep::CovarianceMatrix;

TEST_CASE("reordering permutation maps block to interleaved ordering") {
  const Eigen::MatrixXd p = gsep::reordering_permutation(3);
  Eigen::VectorXd qqpp(6);
  qqpp << 10, 20, 30, 1, 2, 3;  // q_1 q_2 q_3 p_1 p_2 p_3
  const Eigen::VectorXd interleaved = p * qqpp;
  Eigen::VectorXd expected(6);
  expected << 10, 1, 20, 2, 30, 3;
  CHECK((interleaved - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK(test_support::max_abs_diff(p * p.transpose(),
                                   Eigen::MatrixXd::Identity(6, 6)) == 0.0);
}

TEST_CASE("symplectic residual and predicate") {
  CHECK(gsep::symplectic_residual(Eigen::MatrixXd::Identity(4, 4)) == 0.0);
  CHECK(gsep::is_symplectic(Eigen::MatrixXd::Identity(4, 4)));
  CHECK_FALSE(gsep::is_symplectic(2.0 * Eigen::MatrixXd::Identity(4, 4)));

  gsep::rng::Stream stream(3);
  const Eigen::MatrixXd s = test_support::random_symplectic(3, stream, 0.7);
  CHECK(gsep::symplectic_residual(s) < 1e-12);
}

TEST_CASE("squeezer direct sum") {
  Eigen::VectorXd r(2);
  r << 0.5, -0.25;
  const Eigen::MatrixXd sq = gsep::squeezer_direct_sum(r);
  CHECK(sq(0, 0) == doctest::Approx(std::exp(-0.5)));
  CHECK(sq(1, 1) == doctest::Approx(std::exp(0.5)));
  CHECK(sq(2, 2) == doctest::Approx(std::exp(0.25)));
  CHECK(sq(3, 3) == doctest::Approx(std::exp(-0.25)));
  CHECK(gsep::is_symplectic(sq, 1e-12));
}

TEST_CASE("unitary to symplectic") {
  SUBCASE("identity and global phase i") {
    CHECK(test_support::max_abs_diff(
              gsep::unitary_to_symplectic(Eigen::MatrixXcd::Identity(2, 2)),
              Eigen::MatrixXd::Identity(4, 4)) == 0.0);
    // multiplying every mode by i rotates each (q, p) plane by 90 degrees
    const Eigen::MatrixXcd phase =
        std::complex<double>(0, 1) * Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
    for (int k = 0; k < 2; ++k) {
      expected(2 * k, 2 * k + 1) = 1.0;
      expected(2 * k + 1, 2 * k) = -1.0;
    }
    CHECK(test_support::max_abs_diff(gsep::unitary_to_symplectic(phase),
                                     expected) < 1e-15);
  }
  SUBCASE("haar samples give orthogonal symplectic matrices") {
    gsep::rng::Stream stream(11);
    for (int trial = 0; trial < 4; ++trial) {
      const Eigen::MatrixXcd q = gsep::haar_unitary(3, stream);
      const Eigen::MatrixXd k = gsep::unitary_to_symplectic(q);
      CHECK(gsep::symplectic_residual(k) < 1e-13);
      CHECK(test_support::max_abs_diff(k * k.transpose(),
                                       Eigen::MatrixXd::Identity(6, 6)) <
            1e-13);
    }
  }
  SUBCASE("round trip recovers the unitary") {
    gsep::rng::Stream stream(12);
    const Eigen::MatrixXcd q = gsep::haar_unitary(4, stream);
    const Eigen::MatrixXcd back =
        gsep::symplectic_to_unitary(gsep::unitary_to_symplectic(q));
    CHECK(test_support::max_abs_diff(q, back) < 1e-13);
  }
  SUBCASE("rejects non-unitary input") {
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(0, 0) = 1.5;
    CHECK_THROWS_AS(gsep::unitary_to_symplectic(bad), std::invalid_argument);
  }
  SUBCASE("rejects non-passive symplectic") {
    Eigen::VectorXd r(2);
    r << 0.3, 0.0;
    CHECK_THROWS_AS(gsep::symplectic_to_unitary(gsep::squeezer_direct_sum(r)),
                    std::invalid_argument);
  }
}

TEST_CASE("williamson decomposition") {
  SUBCASE("thermal diagonal input") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m.diagonal() << 2.5, 2.5, 1.2, 1.2;
    const auto form = gsep::williamson_decompose(CovarianceMatrix(2, m));
    REQUIRE(form.nu.size() == 2);
    CHECK(form.nu(0) == doctest::Approx(1.2).epsilon(1e-10));
    CHECK(form.nu(1) == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(gsep::symplectic_residual(form.S) < 1e-9);
  }
  SUBCASE("random states recompose") {
    gsep::rng::Stream stream(21);
    for (int trial = 0; trial < 6; ++trial) {
      const CovarianceMatrix gamma =
          test_support::random_state(3, stream, 1.0, 2.5, 0.6);
      const auto form = gsep::williamson_decompose(gamma);
      CHECK(gsep::symplectic_residual(form.S) < 1e-9);
      // nu ascending and consistent with the direct spectrum computation
      const Eigen::VectorXd nu_direct = gsep::symplectic_eigenvalues(gamma);
      CHECK((form.nu - nu_direct).cwiseAbs().maxCoeff() < 1e-8);
      Eigen::MatrixXd d = Eigen::MatrixXd::Zero(6, 6);
      for (int k = 0; k < 3; ++k)
        d(2 * k, 2 * k) = d(2 * k + 1, 2 * k + 1) = form.nu(k);
      const double err = test_support::max_abs_diff(
          form.S * d * form.S.transpose(), gamma.matrix());
      CHECK(err < 1e-8 * (1.0 + gamma.matrix().norm()));
    }
  }
  SUBCASE("degenerate spectrum") {
    gsep::rng::Stream stream(22);
    const Eigen::MatrixXd s = test_support::random_symplectic(2, stream, 0.5);
    Eigen::MatrixXd gamma = 1.8 * s * s.transpose();
    gamma = 0.5 * (gamma + gamma.transpose()).eval();
    const auto form = gsep::williamson_decompose(CovarianceMatrix(2, gamma));
    CHECK(form.nu(0) == doctest::Approx(1.8).epsilon(1e-9));
    CHECK(form.nu(1) == doctest::Approx(1.8).epsilon(1e-9));
    CHECK(gsep::symplectic_residual(form.S) < 1e-9);
  }
  SUBCASE("rejects non positive definite input") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
    m(3, 3) = 0.0;
    CHECK_THROWS_AS(gsep::williamson_decompose(CovarianceMatrix(2, m)),
                    std::invalid_argument);
  }
}

TEST_CASE("euler decomposition") {
  SUBCASE("identity") {
    const auto form = gsep::euler_decompose(Eigen::MatrixXd::Identity(6, 6));
    CHECK(form.r.cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("pure squeezer recovers r sorted descending") {
    Eigen::VectorXd r(3);
    r << 0.1, 0.6, 0.3;
    const auto form = gsep::euler_decompose(gsep::squeezer_direct_sum(r));
    CHECK(form.r(0) == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(form.r(1) == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(form.r(2) == doctest::Approx(0.1).epsilon(1e-10));
  }
  SUBCASE("random symplectic recomposes with orthogonal symplectic factors") {
    gsep::rng::Stream stream(31);
    for (int trial = 0; trial < 6; ++trial) {
      const Eigen::MatrixXd s = test_support::random_symplectic(3, stream, 0.8);
      const auto form = gsep::euler_decompose(s);
      CHECK(gsep::symplectic_residual(form.K) < 1e-10);
      CHECK(gsep::symplectic_residual(form.L) < 1e-10);
      CHECK(test_support::max_abs_diff(form.K * form.K.transpose(),
                                       Eigen::MatrixXd::Identity(6, 6)) <
            1e-10);
      CHECK(test_support::max_abs_diff(form.L * form.L.transpose(),
                                       Eigen::MatrixXd::Identity(6, 6)) <
            1e-10);
      for (int k = 0; k + 1 < 3; ++k) CHECK(form.r(k) >= form.r(k + 1));
      CHECK(form.r(2) >= 0.0);
      const double err = test_support::max_abs_diff(
          form.K * gsep::squeezer_direct_sum(form.r) * form.L, s);
      CHECK(err < 1e-8 * (1.0 + s.norm()));
    }
  }
  SUBCASE("orthogonal symplectic input needs no squeezing") {
    gsep::rng::Stream stream(32);
    const Eigen::MatrixXd k =
        test_support::random_orthogonal_symplectic(3, stream);
    const auto form = gsep::euler_decompose(k);
    CHECK(form.r.cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("rejects non-symplectic input") {
    CHECK_THROWS_AS(gsep::euler_decompose(2.0 * Eigen::MatrixXd::Identity(4, 4)),
                    std::invalid_argument);
  }
}

TEST_CASE("compose covariance") {
  SUBCASE("trivial recipe gives the thermal diagonal") {
    gsep::GaussianRecipe recipe;
    recipe.nu = Eigen::VectorXd::Constant(2, 1.4);
    recipe.nu(1) = 2.0;
    recipe.L = Eigen::MatrixXd::Identity(4, 4);
    recipe.r = Eigen::VectorXd::Zero(2);
    recipe.q_unitary = Eigen::MatrixXcd::Identity(2, 2);
    const CovarianceMatrix gamma = gsep::compose_covariance(recipe);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
    expected.diagonal() << 1.4, 1.4, 2.0, 2.0;
    CHECK(test_support::max_abs_diff(gamma.matrix(), expected) < 1e-14);
  }
  SUBCASE("random recipes compose to physical states with spectrum nu") {
    gsep::rng::Stream stream(33);
    for (int trial = 0; trial < 4; ++trial) {
      const auto recipe = test_support::random_recipe(3, stream, 1.1, 2.0, 0.5);
      const CovarianceMatrix gamma = gsep::compose_covariance(recipe);
      CHECK(gsep::is_physical(gamma).physical);
      Eigen::VectorXd nu_sorted = recipe.nu;
      std::sort(nu_sorted.data(), nu_sorted.data() + nu_sorted.size());
      const Eigen::VectorXd nu = gsep::symplectic_eigenvalues(gamma);
      CHECK((nu - nu_sorted).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  SUBCASE("rejects thermal inputs below vacuum") {
    gsep::GaussianRecipe recipe;
    recipe.nu = Eigen::VectorXd::Constant(2, 0.9);
    recipe.L = Eigen::MatrixXd::Identity(4, 4);
    recipe.r = Eigen::VectorXd::Zero(2);
    recipe.q_unitary = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(gsep::compose_covariance(recipe), std::invalid_argument);
  }
}

TEST_CASE("williamson and euler factors chain into a full recipe round trip") {
  gsep::rng::Stream stream(34);
  const CovarianceMatrix gamma =
      test_support::random_state(2, stream, 1.05, 1.9, 0.5);
  const auto wf = gsep::williamson_decompose(gamma);
  const auto ef = gsep::euler_decompose(wf.S);
  gsep::GaussianRecipe recipe;
  recipe.nu = wf.nu;
  recipe.L = ef.L;
  // euler emits r descending with squeezers diag(e^-r, e^r); the recipe
  // convention matches, so the factors transfer directly
  recipe.r = ef.r;
  recipe.q_unitary = gsep::symplectic_to_unitary(ef.K);
  const CovarianceMatrix rebuilt = gsep::compose_covariance(recipe);
  CHECK(test_support::max_abs_diff(rebuilt.matrix(), gamma.matrix()) <
        1e-7 * (1.0 + gamma.matrix().norm()));
}
