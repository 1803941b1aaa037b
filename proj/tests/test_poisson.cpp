#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "support/oracles.hpp"
#include "vqls/poisson.hpp"

using namespace vqls;
using namespace vqls::testing;

namespace {

Mat permutation(std::size_t dim, const std::vector<std::size_t>& image) {
  Mat m = Mat::Zero(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) m(image[k], k) = 1.0;
  return m;
}

bool is_signed_permutation(const Mat& m) {
  for (int c = 0; c < m.cols(); ++c) {
    int nonzero = 0;
    for (int r = 0; r < m.rows(); ++r) {
      const auto v = m(r, c);
      if (std::abs(v) < 1e-12) continue;
      if (std::abs(v.imag()) > 1e-12 || std::abs(std::abs(v.real()) - 1.0) > 1e-12) return false;
      ++nonzero;
    }
    if (nonzero != 1) return false;
  }
  return true;
}

std::map<std::string, double> coeffs(const Decomposition& d) {
  std::map<std::string, double> out;
  for (const auto& t : d.terms) out[t.label] = t.coeff;
  return out;
}

}  // namespace

TEST_SUITE("poisson") {

TEST_CASE("build_dpem_dense") {
  Eigen::MatrixXd one(2, 2);
  one << 2, -1, -1, 2;
  CHECK(build_dpem_dense(1) == one);
  Eigen::MatrixXd two(4, 4);
  two << 2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2;
  CHECK(build_dpem_dense(2) == two);
  for (int n = 1; n <= 8; ++n) {
    const auto a = build_dpem_dense(n);
    CHECK(a == a.transpose());
    CHECK(a == dpem(n));
  }
  CHECK_THROWS_AS(build_dpem_dense(0), std::invalid_argument);
  CHECK_THROWS_AS(build_dpem_dense(11), std::invalid_argument);
}

TEST_CASE("L1 is X on qubit 0") {
  CHECK(max_abs(circuit_matrix(l1_circuit(1)) - pauli2(GateKind::X)) == 0.0);
  for (int n = 1; n <= 6; ++n) {
    CHECK(l1_circuit(n).size() == 1);
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::size_t> image(dim);
    for (std::size_t k = 0; k < dim; ++k) image[k] = k ^ 1u;
    CHECK(max_abs(circuit_matrix(l1_circuit(n)) - permutation(dim, image)) == 0.0);
  }
}

TEST_CASE("C_i gadgets") {
  CHECK(c_gate(1, 2).size() == 3);
  CHECK(c_gate(5, 6).size() == 11);
  for (int n = 2; n <= 5; ++n) {
    for (int i = 1; i < n; ++i) {
      const auto c = c_gate(i, n);
      CHECK(c.size() == static_cast<std::size_t>(2 * i + 1));
      const Mat m = circuit_matrix(c);
      CHECK(is_signed_permutation(m));
      CHECK(max_abs(m * m - Mat::Identity(m.rows(), m.cols())) < 1e-12);
    }
  }
  CHECK_THROWS_AS(c_gate(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(c_gate(3, 3), std::invalid_argument);
}

TEST_CASE("C_i structure at n = 6") {
  const auto c = c_gate(3, 6);
  const auto& g = c.gates();
  REQUIRE(g.size() == 7);
  for (int k = 0; k < 3; ++k) {
    CHECK(g[k].kind == GateKind::CX);
    CHECK(g[k].controls == std::vector<int>{3});
    CHECK(g[6 - k].kind == GateKind::CX);
    CHECK(g[6 - k].target == g[k].target);
  }
  CHECK(g[0].target == 2);
  CHECK(g[2].target == 0);
  CHECK(g[3].kind == GateKind::MCX);
  CHECK(g[3].target == 3);
  CHECK(g[3].controls.size() == 3);
}

TEST_CASE("L2 permutation") {
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = expect(1, 2) = expect(2, 1) = expect(3, 3) = 1.0;
  CHECK(max_abs(circuit_matrix(l2_circuit(2)) - expect) == 0.0);

  for (int n = 2; n <= 6; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::size_t> image(dim);
    for (std::size_t k = 0; k < dim; ++k) image[k] = k;
    for (std::size_t k = 1; k + 1 < dim; k += 2) std::swap(image[k], image[k + 1]);
    const Mat m = circuit_matrix(l2_circuit(n));
    CHECK(max_abs(m - permutation(dim, image)) == 0.0);
    if (n <= 5) CHECK(max_abs(m * m - Mat::Identity(dim, dim)) == 0.0);
  }
  for (int n = 2; n <= 10; ++n) CHECK(l2_circuit(n).size() == static_cast<std::size_t>(n * n - 1));
  CHECK(l2_circuit(6).size() == 35);
}

TEST_CASE("L2 is the same in either C_i order") {
  for (int n = 2; n <= 5; ++n) {
    Circuit forward(n);
    Circuit backward(n);
    for (int i = 1; i < n; ++i) forward.append(c_gate(i, n));
    for (int i = n - 1; i >= 1; --i) backward.append(c_gate(i, n));
    CHECK(max_abs(circuit_matrix(forward) - circuit_matrix(backward)) == 0.0);
  }
}

TEST_CASE("L3 diagonal") {
  for (int n = 1; n <= 6; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    Mat expect = Mat::Identity(dim, dim);
    expect(0, 0) = -1.0;
    expect(dim - 1, dim - 1) = -1.0;
    if (n == 1) CHECK(expect(0, 0) == expect(1, 1));
    const Mat m = circuit_matrix(l3_circuit(n));
    CHECK(max_abs(m - expect) == 0.0);
    CHECK(l3_circuit(n).size() == static_cast<std::size_t>(2 * n + 2));
  }
}

TEST_CASE("HED terms") {
  const auto d = hed_terms(3);
  REQUIRE(d.size() == 4);
  CHECK(d.kind == DecompositionKind::HED);
  const std::vector<double> expect{2.5, -1.0, -1.0, -0.5};
  for (std::size_t l = 0; l < 4; ++l) CHECK(d.terms[l].coeff == expect[l]);
  for (int n = 2; n <= 9; ++n) CHECK(hed_terms(n).size() == 4);
  CHECK_THROWS_AS(hed_terms(1), std::invalid_argument);

  CHECK(max_abs(circuit_matrix(hed_terms(2).terms[0].circuit) - Mat::Identity(4, 4)) == 0.0);
  for (int n = 2; n <= 5; ++n) {
    for (const auto& t : hed_terms(n).terms) {
      const Mat m = circuit_matrix(t.circuit);
      CHECK(is_signed_permutation(m));
      CHECK(max_abs(m * m - Mat::Identity(m.rows(), m.cols())) < 1e-12);
    }
  }
}

TEST_CASE("HED reconstruction against the gate-level oracle") {
  for (int n = 2; n <= 6; ++n) {
    const auto d = hed_terms(n);
    const std::size_t dim = std::size_t{1} << n;
    Mat sum = Mat::Zero(dim, dim);
    for (const auto& t : d.terms) sum += t.coeff * circuit_matrix(t.circuit);
    const Mat target = dpem(n).cast<std::complex<double>>();
    CHECK(max_abs(sum - target) < 1e-10);
    CHECK(max_abs(d.reconstruct() - target) < 1e-10);
  }
  CHECK(max_abs(hed_terms(2).reconstruct() - dpem(2).cast<std::complex<double>>()) < 1e-12);
}

TEST_CASE("Pauli string circuits") {
  const Mat ix = circuit_matrix(pauli_string_circuit("IX"));
  Mat expect = Mat::Zero(4, 4);
  expect.topLeftCorner(2, 2) = pauli2(GateKind::X);
  expect.bottomRightCorner(2, 2) = pauli2(GateKind::X);
  CHECK(max_abs(ix - expect) == 0.0);
  const Mat yy = circuit_matrix(pauli_string_circuit("YY"));
  const Mat y = pauli2(GateKind::Y);
  Mat kron(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) kron(2 * a + c, 2 * b + d) = y(a, b) * y(c, d);
  CHECK(max_abs(yy - kron) < 1e-15);
  CHECK_THROWS_AS(pauli_string_circuit("IQ"), std::invalid_argument);
}

TEST_CASE("explicit Pauli tables") {
  const std::map<std::string, double> two{{"II", 2}, {"IX", -1}, {"XX", -0.5}, {"YY", -0.5}};
  const std::map<std::string, double> three{{"III", 2},    {"IIX", -1},    {"IXX", -0.5},
                                            {"XXX", -0.25}, {"YYX", -0.25}, {"YXY", -0.25},
                                            {"IYY", -0.5},  {"XYY", 0.25}};
  CHECK(pauli_terms_explicit(2).size() == 4);
  CHECK(pauli_terms_explicit(3).size() == 8);
  CHECK(coeffs(pauli_terms_explicit(2)) == two);
  CHECK(coeffs(pauli_terms_explicit(3)) == three);
  for (int n : {2, 3}) {
    const Mat target = dpem(n).cast<std::complex<double>>();
    CHECK(max_abs(pauli_terms_explicit(n).reconstruct() - target) < 1e-12);
  }
  CHECK_THROWS_AS(pauli_terms_explicit(4), std::invalid_argument);
}

TEST_CASE("Pauli projection") {
  for (int n : {2, 3}) {
    const auto proj = coeffs(pauli_projection(n));
    const auto table = coeffs(pauli_terms_explicit(n));
    REQUIRE(proj.size() == table.size());
    for (const auto& [label, c] : table) {
      REQUIRE(proj.count(label) == 1);
      CHECK(std::abs(proj.at(label) - c) < 1e-12);
    }
  }
  std::size_t previous = 0;
  for (int n = 2; n <= 6; ++n) {
    const auto d = pauli_projection(n);
    const Mat target = dpem(n).cast<std::complex<double>>();
    CHECK(max_abs(d.reconstruct() - target) < 1e-10);
    CHECK(d.size() > previous);
    if (previous > 0) CHECK(static_cast<double>(d.size()) / previous > 1.0);
    previous = d.size();
    for (const auto& t : d.terms) CHECK(std::abs(t.coeff) > 1e-12);
  }
  CHECK_THROWS_AS(pauli_projection(7), std::invalid_argument);
}

TEST_CASE("decomposition stats") {
  for (int n = 2; n <= 10; ++n) {
    const auto s = decomposition_stats(DecompositionKind::HED, n);
    CHECK(s.term_count == 4);
    CHECK(s.max_circuit_gates == std::max<std::size_t>(n * n - 1, 2 * n + 2));
  }
  CHECK(decomposition_stats(DecompositionKind::HED, 6).max_circuit_gates == 35);
  for (int n = 2; n <= 6; ++n) {
    const auto s = decomposition_stats(DecompositionKind::Pauli, n);
    CHECK(s.max_circuit_gates == static_cast<std::size_t>(n));
  }
}

TEST_CASE("condition number") {
  CHECK(condition_number(1) == 3.0);
  double previous = 1.0;
  for (int n = 1; n <= 10; ++n) {
    const double kappa = condition_number(n);
    CHECK(std::abs(kappa - analytic_kappa(n)) / analytic_kappa(n) < 1e-9);
    CHECK(kappa > previous);
    previous = kappa;
  }
  const double step = std::log2(condition_number(10)) - std::log2(condition_number(9));
  CHECK(std::abs(step - 2.0) < 0.01);
}

}  // TEST_SUITE
