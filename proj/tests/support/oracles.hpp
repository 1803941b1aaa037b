#pragma once

// Brute-force references used by the tests. Nothing here calls into the
// simulator's execution path: gates become dense matrices by enumerating
// basis columns, and costs are computed from the matrix definitions.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "vqls/qsim.hpp"

namespace vqls::testing {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Eigen::MatrixXd dpem(int n) {
  const int dim = 1 << n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    a(i, i) = 2.0;
    if (i + 1 < dim) a(i, i + 1) = a(i + 1, i) = -1.0;
  }
  return a;
}

inline Eigen::Matrix2cd pauli2(GateKind kind, double angle = 0.0) {
  using c = std::complex<double>;
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  switch (kind) {
    case GateKind::H: m << s, s, s, -s; break;
    case GateKind::X:
    case GateKind::CX:
    case GateKind::MCX: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, c(0, -1), c(0, 1), 0; break;
    case GateKind::Z:
    case GateKind::CZ:
    case GateKind::MCZ: m << 1, 0, 0, -1; break;
    case GateKind::Ry:
      m << std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2), std::cos(angle / 2);
      break;
  }
  return m;
}

/// Dense matrix of one gate on n qubits, built column by column.
inline Mat gate_matrix(const Gate& g, int n) {
  const std::size_t dim = std::size_t{1} << n;
  const Eigen::Matrix2cd u = pauli2(g.kind, g.angle);
  Mat m = Mat::Zero(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    bool active = true;
    for (int c : g.controls) active = active && ((k >> c) & 1u);
    if (!active) {
      m(k, k) = 1.0;
      continue;
    }
    const std::size_t in_bit = (k >> g.target) & 1u;
    const std::size_t base = k & ~(std::size_t{1} << g.target);
    for (std::size_t out_bit = 0; out_bit < 2; ++out_bit) {
      m(base | (out_bit << g.target), k) = u(out_bit, in_bit);
    }
  }
  return m;
}

inline Mat circuit_matrix(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.num_qubits();
  Mat m = Mat::Identity(dim, dim);
  for (const auto& g : c.gates()) m = gate_matrix(g, c.num_qubits()) * m;
  return m;
}

inline Vec to_vec(const StateVector& s) {
  Vec v(s.dim());
  for (std::size_t k = 0; k < s.dim(); ++k) v(k) = s[k];
  return v;
}

inline Vec zero_state(int n) {
  Vec v = Vec::Zero(std::size_t{1} << n);
  v(0) = 1.0;
  return v;
}

inline Vec uniform_b(int n) {
  const std::size_t dim = std::size_t{1} << n;
  return Vec::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
}

/// 1 - |<b|A psi>|^2 / <A psi|A psi>
inline double dense_global_cost(const Eigen::MatrixXd& a, const Vec& psi) {
  const Vec phi = a.cast<std::complex<double>>() * psi;
  const Vec b = uniform_b(static_cast<int>(std::log2(psi.size())));
  return 1.0 - std::norm(b.dot(phi)) / phi.squaredNorm();
}

/// With U = H^n, U Z_j U^dag = X_j, so the local cost is
/// 1/2 - (1/2n) sum_j <phi|X_j|phi> / <phi|phi>, phi = A psi.
inline double dense_local_cost(const Eigen::MatrixXd& a, const Vec& psi) {
  const int n = static_cast<int>(std::log2(psi.size()));
  const Vec phi = a.cast<std::complex<double>>() * psi;
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const Vec xphi = gate_matrix(Gate::x(j), n) * phi;
    sum += phi.dot(xphi).real();
  }
  return 0.5 - sum / (2.0 * n * phi.squaredNorm());
}

/// Gaussian elimination with partial pivoting.
inline Eigen::VectorXd gaussian_solve(Eigen::MatrixXd a, Eigen::VectorXd b) {
  const int dim = static_cast<int>(a.rows());
  for (int col = 0; col < dim; ++col) {
    int piv = col;
    for (int r = col + 1; r < dim; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    a.row(col).swap(a.row(piv));
    std::swap(b(col), b(piv));
    for (int r = col + 1; r < dim; ++r) {
      const double f = a(r, col) / a(col, col);
      a.row(r) -= f * a.row(col);
      b(r) -= f * b(col);
    }
  }
  Eigen::VectorXd x(dim);
  for (int r = dim - 1; r >= 0; --r) {
    double s = b(r);
    for (int c = r + 1; c < dim; ++c) s -= a(r, c) * x(c);
    x(r) = s / a(r, r);
  }
  return x;
}

/// lambda_max / lambda_min of the (2, -1) matrix of size N from the closed
/// form 2 - 2 cos(k pi / (N + 1)).
inline double analytic_kappa(int n) {
  const double dim = std::ldexp(1.0, n);
  const double pi = std::numbers::pi;
  return (2.0 - 2.0 * std::cos(dim * pi / (dim + 1))) / (2.0 - 2.0 * std::cos(pi / (dim + 1)));
}

/// Random gate sequence over every kind, including multi-controlled ones.
inline Circuit random_circuit(int n, int gates, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  Circuit c(n);
  const int kinds = n >= 2 ? 9 : 5;
  std::uniform_int_distribution<int> kind(0, kinds - 1);
  for (int i = 0; i < gates; ++i) {
    const int t = qubit(rng);
    switch (kind(rng)) {
      case 0: c.add(Gate::h(t)); break;
      case 1: c.add(Gate::x(t)); break;
      case 2: c.add(Gate::y(t)); break;
      case 3: c.add(Gate::z(t)); break;
      case 4: c.add(Gate::ry(t, angle(rng))); break;
      case 5:
      case 6: {
        int o = qubit(rng);
        while (o == t) o = qubit(rng);
        c.add(kind(rng) % 2 ? Gate::cx(o, t) : Gate::cz(o, t));
        break;
      }
      default: {
        std::vector<int> controls;
        for (int q = 0; q < n; ++q)
          if (q != t && rng() % 2) controls.push_back(q);
        if (controls.empty()) controls.push_back((t + 1) % n);
        if (rng() % 2) {
          c.add(Gate::mcx(controls, t));
        } else {
          controls.push_back(t);
          c.add(Gate::mcz(controls));
        }
      }
    }
  }
  return c;
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace vqls::testing
