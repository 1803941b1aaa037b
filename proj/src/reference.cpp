#include "vqls/reference.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace vqls {

namespace {
constexpr int kMaxThomasQubits = 20;
constexpr Eigen::Index kMaxDenseDim = 1024;
}  // namespace

ClassicalSolution thomas_solve(int n) {
  if (n < 1 || n > kMaxThomasQubits) {
    throw std::invalid_argument(fmt::format("thomas_solve: n={} outside [1, {}]", n, kMaxThomasQubits));
  }
  const std::size_t dim = std::size_t{1} << n;
  const double rhs = 1.0 / std::sqrt(static_cast<double>(dim));
  constexpr double diag = 2.0;
  constexpr double off = -1.0;

  // Forward sweep, then back substitution.
  std::vector<double> c_prime(dim, 0.0);
  std::vector<double> d_prime(dim, 0.0);
  c_prime[0] = off / diag;
  d_prime[0] = rhs / diag;
  for (std::size_t i = 1; i < dim; ++i) {
    const double denom = diag - off * c_prime[i - 1];
    c_prime[i] = off / denom;
    d_prime[i] = (rhs - off * d_prime[i - 1]) / denom;
  }
  ClassicalSolution sol;
  sol.x_raw.assign(dim, 0.0);
  sol.x_raw[dim - 1] = d_prime[dim - 1];
  for (std::size_t i = dim - 1; i-- > 0;) {
    sol.x_raw[i] = d_prime[i] - c_prime[i] * sol.x_raw[i + 1];
  }

  double norm = 0.0;
  for (double v : sol.x_raw) norm += v * v;
  norm = std::sqrt(norm);
  sol.x_normalized.reserve(dim);
  for (double v : sol.x_raw) sol.x_normalized.push_back(v / norm);
  return sol;
}

Eigen::MatrixXcd dense_matmul(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dense_matmul: inner dimension mismatch");
  if (a.rows() > kMaxDenseDim || b.cols() > kMaxDenseDim) {
    throw std::invalid_argument("dense_matmul: dimension exceeds 1024");
  }
  return a * b;
}

std::vector<double> dense_eigen_sym(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("dense_eigen_sym: matrix not square");
  if (m.rows() > kMaxDenseDim) throw std::invalid_argument("dense_eigen_sym: dimension exceeds 1024");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("dense_eigen_sym: matrix not symmetric");
  }
  if (m.rows() == 2) {
    // Closed form; the iterative path is off by an ulp on [[2,-1],[-1,2]].
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> direct;
    direct.computeDirect(Eigen::Matrix2d(m), Eigen::EigenvaluesOnly);
    return {direct.eigenvalues()[0], direct.eigenvalues()[1]};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense_eigen_sym: solver failed");
  const auto& ev = solver.eigenvalues();  // ascending
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace vqls
