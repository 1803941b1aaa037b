#pragma once

// Classical ground truth for the Poisson system with a uniform right-hand
// side, plus the dense linear algebra the verification paths lean on.

#include <vector>

#include <Eigen/Dense>

namespace vqls {

struct ClassicalSolution {
  std::vector<double> x_raw;         // solves A x = b, b = (1,...,1)/sqrt(N)
  std::vector<double> x_normalized;  // unit 2-norm
};

/// Thomas-algorithm solve of the (2, -1) tridiagonal system of size 2^n.
ClassicalSolution thomas_solve(int n);

Eigen::MatrixXcd dense_matmul(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Eigenvalues of a real symmetric matrix, ascending. Throws
/// std::invalid_argument for non-square or non-symmetric input.
std::vector<double> dense_eigen_sym(const Eigen::MatrixXd& m);

}  // namespace vqls
