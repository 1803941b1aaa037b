#include "vqls/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "vqls/reference.hpp"

namespace vqls {

namespace {

constexpr double kPauliPruneThreshold = 1e-12;
constexpr int kMaxPauliQubits = 6;

void require_range(const char* what, int n, int lo, int hi) {
  if (n < lo || n > hi) {
    throw std::invalid_argument(fmt::format("{}: n={} outside [{}, {}]", what, n, lo, hi));
  }
}

// The permutation L2 must realize.
Eigen::MatrixXcd l2_target(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m(0, 0) = 1.0;
  m(dim - 1, dim - 1) = 1.0;
  for (Eigen::Index k = 1; k + 1 < dim; k += 2) {
    m(k, k + 1) = 1.0;
    m(k + 1, k) = 1.0;
  }
  return m;
}

Circuit l2_in_order(int n, bool operator_product_order) {
  Circuit out(n);
  if (operator_product_order) {
    // C_1 C_2 ... C_{n-1} as an operator product: C_{n-1} acts first.
    for (int i = n - 1; i >= 1; --i) out.append(c_gate(i, n));
  } else {
    for (int i = 1; i <= n - 1; ++i) out.append(c_gate(i, n));
  }
  return out;
}

// Product order vs. time order is ambiguous as written; settle it once
// against the target permutation on small registers.
bool l2_uses_operator_product_order() {
  static const bool order = [] {
    for (bool candidate : {true, false}) {
      bool ok = true;
      for (int n = 2; n <= 4 && ok; ++n) {
        ok = (circuit_to_matrix(l2_in_order(n, candidate)) - l2_target(n)).cwiseAbs().maxCoeff() <
             1e-12;
      }
      if (ok) return candidate;
    }
    throw std::logic_error("no C_i ordering reproduces the L2 permutation");
  }();
  return order;
}

// Matrix element <row|P|col> of a Pauli string is nonzero only for
// col = row ^ xmask; returns that element.
cplx pauli_element(const std::string& label, std::uint64_t row) {
  const int n = static_cast<int>(label.size());
  cplx phase{1.0, 0.0};
  for (int q = 0; q < n; ++q) {
    const char p = label[static_cast<std::size_t>(n - 1 - q)];
    const bool bit = (row >> q) & 1u;
    switch (p) {
      case 'I':
      case 'X':
        break;
      case 'Y':
        // Y = [[0, -i], [i, 0]]: <0|Y|1> = -i, <1|Y|0> = i.
        phase *= bit ? cplx(0, 1) : cplx(0, -1);
        break;
      case 'Z':
        if (bit) phase = -phase;
        break;
      default:
        throw std::invalid_argument(fmt::format("bad Pauli letter '{}'", p));
    }
  }
  return phase;
}

std::uint64_t pauli_xmask(const std::string& label) {
  const int n = static_cast<int>(label.size());
  std::uint64_t mask = 0;
  for (int q = 0; q < n; ++q) {
    const char p = label[static_cast<std::size_t>(n - 1 - q)];
    if (p == 'X' || p == 'Y') mask |= std::uint64_t{1} << q;
  }
  return mask;
}

std::string pauli_label(std::uint64_t code, int n) {
  static constexpr char letters[] = {'I', 'X', 'Y', 'Z'};
  std::string label(static_cast<std::size_t>(n), 'I');
  for (int pos = n - 1; pos >= 0; --pos) {
    label[static_cast<std::size_t>(pos)] = letters[code & 3u];
    code >>= 2;
  }
  return label;
}

}  // namespace

std::string to_string(DecompositionKind kind) {
  return kind == DecompositionKind::HED ? "hed" : "pauli";
}

Eigen::MatrixXcd Decomposition::reconstruct() const {
  const Eigen::Index dim = static_cast<Eigen::Index>(system.dim());
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms) sum += t.coeff * circuit_to_matrix(t.circuit);
  return sum;
}

Eigen::MatrixXd build_dpem_dense(int n) {
  require_range("build_dpem_dense", n, 1, kMaxDenseQubits);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    a(i, i) = 2.0;
    if (i > 0) a(i, i - 1) = -1.0;
    if (i + 1 < dim) a(i, i + 1) = -1.0;
  }
  return a;
}

Circuit l1_circuit(int n) {
  Circuit c(n);
  c.add(Gate::x(0));
  return c;
}

Circuit c_gate(int i, int n) {
  if (i < 1 || i > n - 1) {
    throw std::invalid_argument(fmt::format("c_gate: i={} outside [1, {}]", i, n - 1));
  }
  Circuit c(n);
  for (int k = i - 1; k >= 0; --k) c.add(Gate::cx(i, k));
  std::vector<int> lower(static_cast<std::size_t>(i));
  for (int k = 0; k < i; ++k) lower[static_cast<std::size_t>(k)] = k;
  c.add(Gate::mcx(lower, i));
  for (int k = 0; k <= i - 1; ++k) c.add(Gate::cx(i, k));
  return c;
}

Circuit l2_circuit(int n) {
  require_range("l2_circuit", n, 2, kMaxQubits);
  return l2_in_order(n, l2_uses_operator_product_order());
}

Circuit l3_circuit(int n) {
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
  Circuit c(n);
  c.add(Gate::mcz(all));
  for (int q = 0; q < n; ++q) c.add(Gate::x(q));
  c.add(Gate::mcz(all));
  for (int q = 0; q < n; ++q) c.add(Gate::x(q));
  return c;
}

Decomposition hed_terms(int n) {
  require_range("hed_terms", n, 2, kMaxQubits);
  Decomposition d{PoissonSystem{n}, DecompositionKind::HED, {}};
  d.terms.push_back({2.5, Circuit(n), "I"});
  d.terms.push_back({-1.0, l1_circuit(n), "L1"});
  d.terms.push_back({-1.0, l2_circuit(n), "L2"});
  d.terms.push_back({-0.5, l3_circuit(n), "L3"});
  return d;
}

Circuit pauli_string_circuit(const std::string& label) {
  const int n = static_cast<int>(label.size());
  Circuit c(n);
  for (int q = 0; q < n; ++q) {
    switch (label[static_cast<std::size_t>(n - 1 - q)]) {
      case 'I': break;
      case 'X': c.add(Gate::x(q)); break;
      case 'Y': c.add(Gate::y(q)); break;
      case 'Z': c.add(Gate::z(q)); break;
      default: throw std::invalid_argument("bad Pauli label " + label);
    }
  }
  return c;
}

Decomposition pauli_terms_explicit(int n) {
  std::vector<std::pair<std::string, double>> table;
  if (n == 2) {
    table = {{"II", 2.0}, {"IX", -1.0}, {"XX", -0.5}, {"YY", -0.5}};
  } else if (n == 3) {
    table = {{"III", 2.0},   {"IIX", -1.0},  {"IXX", -0.5}, {"XXX", -0.25},
             {"YYX", -0.25}, {"YXY", -0.25}, {"IYY", -0.5}, {"XYY", 0.25}};
  } else {
    throw std::invalid_argument(fmt::format("pauli_terms_explicit: no table for n={}", n));
  }
  Decomposition d{PoissonSystem{n}, DecompositionKind::Pauli, {}};
  for (const auto& [label, coeff] : table) {
    d.terms.push_back({coeff, pauli_string_circuit(label), label});
  }
  return d;
}

Decomposition pauli_projection(int n) {
  require_range("pauli_projection", n, 1, kMaxPauliQubits);
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t strings = dim * dim;
  Decomposition d{PoissonSystem{n}, DecompositionKind::Pauli, {}};
  for (std::uint64_t code = 0; code < strings; ++code) {
    const std::string label = pauli_label(code, n);
    const std::uint64_t xmask = pauli_xmask(label);
    // Tr(P A) = sum_r P[r, r^x] A[r^x, r]; A is tridiagonal.
    cplx trace{0.0, 0.0};
    for (std::uint64_t r = 0; r < dim; ++r) {
      const std::uint64_t c = r ^ xmask;
      const std::uint64_t gap = r > c ? r - c : c - r;
      double a = 0.0;
      if (gap == 0) {
        a = 2.0;
      } else if (gap == 1) {
        a = -1.0;
      } else {
        continue;
      }
      trace += pauli_element(label, r) * a;
    }
    const double coeff = trace.real() / static_cast<double>(dim);
    if (std::abs(coeff) > kPauliPruneThreshold) {
      d.terms.push_back({coeff, pauli_string_circuit(label), label});
    }
  }
  return d;
}

DecompositionStats decomposition_stats(DecompositionKind kind, int n) {
  const Decomposition d = kind == DecompositionKind::HED ? hed_terms(n) : pauli_projection(n);
  DecompositionStats s;
  s.term_count = d.size();
  for (const auto& t : d.terms) s.max_circuit_gates = std::max(s.max_circuit_gates, t.circuit.size());
  return s;
}

double condition_number(int n) {
  require_range("condition_number", n, 1, kMaxDenseQubits);
  const auto ev = dense_eigen_sym(build_dpem_dense(n));
  return ev.back() / ev.front();
}

}  // namespace vqls
