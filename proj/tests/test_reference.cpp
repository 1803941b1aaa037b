#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "support/oracles.hpp"
#include "vqls/reference.hpp"

using namespace vqls;
using namespace vqls::testing;

TEST_SUITE("reference") {

TEST_CASE("thomas_solve on one qubit") {
  const auto sol = thomas_solve(1);
  CHECK(sol.x_raw[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sol.x_raw[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("thomas_solve residual, normalization and symmetry") {
  for (int n = 1; n <= 10; ++n) {
    const auto sol = thomas_solve(n);
    const std::size_t dim = std::size_t{1} << n;
    REQUIRE(sol.x_raw.size() == dim);
    const double b = 1.0 / std::sqrt(static_cast<double>(dim));
    double resid = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double ax = 2 * sol.x_raw[i];
      if (i > 0) ax -= sol.x_raw[i - 1];
      if (i + 1 < dim) ax -= sol.x_raw[i + 1];
      resid = std::max(resid, std::abs(ax - b));
      norm2 += sol.x_normalized[i] * sol.x_normalized[i];
      CHECK(sol.x_normalized[i] > 0.0);
      CHECK(std::abs(sol.x_normalized[i] - sol.x_normalized[dim - 1 - i]) < 1e-12);
    }
    CHECK(resid < 1e-10);
    CHECK(std::abs(norm2 - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(thomas_solve(0), std::invalid_argument);
  CHECK_THROWS_AS(thomas_solve(21), std::invalid_argument);
}

TEST_CASE("thomas_solve agrees with Gaussian elimination") {
  for (int n = 1; n <= 8; ++n) {
    const auto sol = thomas_solve(n);
    const int dim = 1 << n;
    const Eigen::VectorXd x = gaussian_solve(dpem(n), Eigen::VectorXd::Constant(dim, 1 / std::sqrt(double(dim))));
    for (int i = 0; i < dim; ++i) CHECK(std::abs(sol.x_raw[i] - x(i)) < 1e-10);
  }
}

TEST_CASE("dense_eigen_sym") {
  Eigen::MatrixXd m(2, 2);
  m << 2, -1, -1, 2;
  const auto ev = dense_eigen_sym(m);
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(3.0));

  const auto ev2 = dense_eigen_sym(dpem(2));
  REQUIRE(ev2.size() == 4);
  for (double v : ev2) {
    CHECK(v > 0.0);
    CHECK(v < 4.0);
  }

  // Each eigenvalue is a root of the characteristic polynomial.
  for (int n = 1; n <= 2; ++n) {
    const Eigen::MatrixXd a = dpem(n);
    for (double lambda : dense_eigen_sym(a)) {
      const Eigen::MatrixXd shifted = a - lambda * Eigen::MatrixXd::Identity(a.rows(), a.cols());
      CHECK(std::abs(shifted.determinant()) < 1e-9);
    }
  }

  // Ascending order and agreement with the closed form.
  for (int n = 1; n <= 10; ++n) {
    const auto ev = dense_eigen_sym(dpem(n));
    const double dim = ev.size();
    for (std::size_t k = 0; k < ev.size(); ++k) {
      const double closed = 2 - 2 * std::cos((k + 1) * M_PI / (dim + 1));
      CHECK(std::abs(ev[k] - closed) < 1e-9);
      CHECK(ev[k] > 0.0);
    }
  }

  Eigen::MatrixXd asym(2, 2);
  asym << 1, 2, 0, 1;
  CHECK_THROWS_AS(dense_eigen_sym(asym), std::invalid_argument);
  CHECK_THROWS_AS(dense_eigen_sym(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("dense_matmul") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Mat m(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = {g(rng), g(rng)};
  CHECK(max_abs(dense_matmul(Mat::Identity(5, 5), m) - m) == 0.0);
  CHECK(max_abs(dense_matmul(m, m) - m * m) < 1e-12);
  CHECK_THROWS_AS(dense_matmul(Mat::Zero(2, 3), Mat::Zero(2, 3)), std::invalid_argument);
}

}  // TEST_SUITE
