#include "vqls/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace vqls {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument(fmt::format("qubit count {} outside [1, {}]", n, kMaxQubits));
  }
}

std::uint64_t control_mask(const Gate& gate) {
  std::uint64_t mask = 0;
  for (int c : gate.controls) mask |= std::uint64_t{1} << c;
  return mask;
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n) : n_(n) {
  check_qubit_count(n);
  amps_.assign(std::size_t{1} << n, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(int n, std::vector<cplx> amps) : n_(n), amps_(std::move(amps)) {
  check_qubit_count(n);
  if (amps_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument(
        fmt::format("amplitude count {} does not match 2^{}", amps_.size(), n));
  }
}

StateVector StateVector::basis(int n, std::uint64_t index) {
  StateVector s(n);
  if (index >= s.dim()) throw std::invalid_argument("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("inner: qubit-count mismatch");
  cplx acc{0.0, 0.0};
  const auto x = a.amps();
  const auto y = b.amps();
  for (std::size_t k = 0; k < x.size(); ++k) acc += std::conj(x[k]) * y[k];
  return acc;
}

// ---------------------------------------------------------------------------
// Gate

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::Ry: return "Ry";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
    case GateKind::MCX: return "MCX";
    case GateKind::MCZ: return "MCZ";
  }
  return "?";
}

Gate Gate::mcz(std::vector<int> qubits) {
  if (qubits.empty()) throw std::invalid_argument("mcz needs at least one qubit");
  const int target = qubits.back();
  qubits.pop_back();
  return {GateKind::MCZ, target, std::move(qubits), 0.0};
}

Eigen::Matrix2cd Gate::base_matrix() const {
  Eigen::Matrix2cd m;
  switch (kind) {
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      m << s, s, s, -s;
      break;
    }
    case GateKind::X:
    case GateKind::CX:
    case GateKind::MCX:
      m << 0, 1, 1, 0;
      break;
    case GateKind::Y:
      m << 0, cplx(0, -1), cplx(0, 1), 0;
      break;
    case GateKind::Z:
    case GateKind::CZ:
    case GateKind::MCZ:
      m << 1, 0, 0, -1;
      break;
    case GateKind::Ry: {
      const double c = std::cos(angle / 2.0);
      const double s = std::sin(angle / 2.0);
      m << c, -s, s, c;
      break;
    }
  }
  return m;
}

void validate_gate(const Gate& gate, int n) {
  auto in_range = [n](int q) { return q >= 0 && q < n; };
  if (!in_range(gate.target)) {
    throw std::out_of_range(fmt::format("{} target {} outside register of {} qubits",
                                        to_string(gate.kind), gate.target, n));
  }
  for (int c : gate.controls) {
    if (!in_range(c)) {
      throw std::out_of_range(fmt::format("{} control {} outside register of {} qubits",
                                          to_string(gate.kind), c, n));
    }
    if (c == gate.target) throw std::invalid_argument("control coincides with target");
  }
  auto sorted = gate.controls;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate control qubit");
  }
  if ((gate.kind == GateKind::CX || gate.kind == GateKind::CZ) && gate.controls.size() != 1) {
    throw std::invalid_argument(to_string(gate.kind) + " takes exactly one control");
  }
  if (gate.kind == GateKind::Ry && !std::isfinite(gate.angle)) {
    throw std::invalid_argument("Ry angle is not finite");
  }
}

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(int n) : n_(n) { check_qubit_count(n); }

Circuit::Circuit(int n, std::vector<Gate> gates) : Circuit(n) {
  for (auto& g : gates) add(std::move(g));
}

Circuit& Circuit::add(Gate gate) {
  validate_gate(gate, n_);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_ != n_) throw std::invalid_argument("append: qubit-count mismatch");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

Circuit Circuit::adjoint() const {
  Circuit out(n_);
  out.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::Ry) g.angle = -g.angle;
    out.gates_.push_back(std::move(g));
  }
  return out;
}

Circuit then(const Circuit& first, const Circuit& second) {
  Circuit out = first;
  out.append(second);
  return out;
}

// ---------------------------------------------------------------------------
// Execution

void apply_gate(StateVector& state, const Gate& gate) {
  validate_gate(gate, state.num_qubits());
  const std::uint64_t tbit = std::uint64_t{1} << gate.target;
  const std::uint64_t cmask = control_mask(gate);
  const Eigen::Matrix2cd m = gate.base_matrix();
  auto amps = state.amps();
  const std::uint64_t dim = amps.size();

  const bool diagonal = m(0, 1) == cplx{0.0, 0.0} && m(1, 0) == cplx{0.0, 0.0};
  for (std::uint64_t k = 0; k < dim; ++k) {
    if ((k & tbit) || (k & cmask) != cmask) continue;
    cplx& a0 = amps[k];
    cplx& a1 = amps[k | tbit];
    if (diagonal) {
      a0 *= m(0, 0);
      a1 *= m(1, 1);
    } else {
      const cplx v0 = a0;
      const cplx v1 = a1;
      a0 = m(0, 0) * v0 + m(0, 1) * v1;
      a1 = m(1, 0) * v0 + m(1, 1) * v1;
    }
  }
}

StateVector run_circuit(const Circuit& circuit, StateVector initial) {
  if (circuit.num_qubits() != initial.num_qubits()) {
    throw std::invalid_argument(fmt::format("circuit has {} qubits, state has {}",
                                            circuit.num_qubits(), initial.num_qubits()));
  }
  for (const auto& g : circuit.gates()) apply_gate(initial, g);
  return initial;
}

StateVector prepare(const Circuit& circuit) {
  return run_circuit(circuit, StateVector(circuit.num_qubits()));
}

Eigen::MatrixXcd circuit_to_matrix(const Circuit& circuit) {
  const int n = circuit.num_qubits();
  if (n > kMaxDenseQubits) {
    throw std::invalid_argument(
        fmt::format("dense extraction limited to {} qubits, got {}", kMaxDenseQubits, n));
  }
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd out(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const StateVector col = run_circuit(circuit, StateVector::basis(n, k));
    for (std::size_t r = 0; r < dim; ++r) out(r, k) = col[r];
  }
  return out;
}

Circuit controlled(const Circuit& circuit) {
  const int n = circuit.num_qubits();
  Circuit out(n + 1);
  for (Gate g : circuit.gates()) {
    g.controls.push_back(n);
    if (g.kind == GateKind::X) {
      g.kind = GateKind::CX;
    } else if (g.kind == GateKind::Z) {
      g.kind = GateKind::CZ;
    } else if (g.kind == GateKind::CX) {
      g.kind = GateKind::MCX;
    } else if (g.kind == GateKind::CZ) {
      g.kind = GateKind::MCZ;
    }
    out.add(std::move(g));
  }
  return out;
}

double expectation_zj(const StateVector& state, int j) {
  if (j < 0 || j >= state.num_qubits()) throw std::out_of_range("expectation_zj: qubit index");
  const std::uint64_t bit = std::uint64_t{1} << j;
  double acc = 0.0;
  const auto amps = state.amps();
  for (std::uint64_t k = 0; k < amps.size(); ++k) {
    const double p = std::norm(amps[k]);
    acc += (k & bit) ? -p : p;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Hadamard test

double hadamard_test_exact(const Circuit& prepared, const Circuit& tested) {
  if (prepared.num_qubits() != tested.num_qubits()) {
    throw std::invalid_argument("hadamard_test: qubit-count mismatch");
  }
  const StateVector psi = prepare(prepared);
  const StateVector u_psi = run_circuit(tested, psi);
  return inner(psi, u_psi).real();
}

Circuit hadamard_test_circuit(const Circuit& prepared, const Circuit& tested) {
  if (prepared.num_qubits() != tested.num_qubits()) {
    throw std::invalid_argument("hadamard_test: qubit-count mismatch");
  }
  const int n = prepared.num_qubits();
  Circuit out(n + 1);
  for (const auto& g : prepared.gates()) out.add(g);
  out.add(Gate::h(n));
  out.append(controlled(tested));
  out.add(Gate::h(n));
  return out;
}

double hadamard_test_p0(const Circuit& prepared, const Circuit& tested) {
  const Circuit full = hadamard_test_circuit(prepared, tested);
  const StateVector out = prepare(full);
  // Ancilla is the most significant qubit: P(0) is the weight of the lower half.
  double p0 = 0.0;
  const auto amps = out.amps();
  for (std::size_t k = 0; k < amps.size() / 2; ++k) p0 += std::norm(amps[k]);
  return std::clamp(p0, 0.0, 1.0);
}

ShotResult sample_ancilla(double p0, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  // Round-off below this level is not a physical bias.
  double p1 = std::clamp(1.0 - p0, 0.0, 1.0);
  if (p1 < 1e-13) p1 = 0.0;
  if (p1 > 1.0 - 1e-13) p1 = 1.0;
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::uint64_t> ones(shots, p1);
  const std::uint64_t n1 = ones(rng);
  ShotResult r;
  r.shots = shots;
  r.counts[0] = shots - n1;
  r.counts[1] = n1;
  return r;
}

double hadamard_test_sampled(const Circuit& prepared, const Circuit& tested,
                             std::uint64_t shots, std::uint64_t seed) {
  const ShotResult r = sample_ancilla(hadamard_test_p0(prepared, tested), shots, seed);
  const double n0 = static_cast<double>(r.counts.at(0));
  const double n1 = static_cast<double>(r.counts.at(1));
  return (n0 - n1) / static_cast<double>(r.shots);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace vqls
