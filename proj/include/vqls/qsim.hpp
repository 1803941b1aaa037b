#pragma once

// Dense statevector simulator.
//
// Bit order: qubit 0 is the least-significant bit of the basis-state index,
// so the two-qubit basis |q1 q0> maps to index 2*q1 + q0.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vqls {

using cplx = std::complex<double>;

/// Largest register the simulator accepts.
inline constexpr int kMaxQubits = 20;
/// Largest register for which dense unitaries may be extracted.
inline constexpr int kMaxDenseQubits = 10;

class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(int n);
  StateVector(int n, std::vector<cplx> amps);

  static StateVector basis(int n, std::uint64_t index);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }

  std::span<const cplx> amps() const { return amps_; }
  std::span<cplx> amps() { return amps_; }
  const cplx& operator[](std::size_t k) const { return amps_[k]; }
  cplx& operator[](std::size_t k) { return amps_[k]; }

  double norm() const;

 private:
  int n_;
  std::vector<cplx> amps_;
};

/// <a|b>
cplx inner(const StateVector& a, const StateVector& b);

enum class GateKind { H, X, Y, Z, Ry, CX, CZ, MCX, MCZ };

std::string to_string(GateKind kind);

/// A single-target gate, optionally conditioned on a set of control qubits.
/// The kind selects the 2x2 operation applied to the target; CX/CZ carry
/// exactly one control, MCX/MCZ any number, and H/X/Y/Z/Ry may also carry
/// controls once a circuit has been passed through controlled().
struct Gate {
  GateKind kind = GateKind::X;
  int target = 0;
  std::vector<int> controls;
  double angle = 0.0;  // Ry only, radians

  static Gate h(int q) { return {GateKind::H, q, {}, 0.0}; }
  static Gate x(int q) { return {GateKind::X, q, {}, 0.0}; }
  static Gate y(int q) { return {GateKind::Y, q, {}, 0.0}; }
  static Gate z(int q) { return {GateKind::Z, q, {}, 0.0}; }
  static Gate ry(int q, double theta) { return {GateKind::Ry, q, {}, theta}; }
  static Gate cx(int control, int target) { return {GateKind::CX, target, {control}, 0.0}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, b, {a}, 0.0}; }
  static Gate mcx(std::vector<int> controls, int target) {
    return {GateKind::MCX, target, std::move(controls), 0.0};
  }
  /// Phase flip on the all-ones pattern of `qubits` (symmetric in its
  /// arguments); the last qubit is stored as the target.
  static Gate mcz(std::vector<int> qubits);

  /// The 2x2 matrix applied to the target when all controls are set.
  Eigen::Matrix2cd base_matrix() const;

  bool operator==(const Gate&) const = default;
};

/// Throws std::invalid_argument if the gate is malformed or does not fit
/// an n-qubit register.
void validate_gate(const Gate& gate, int n);

class Circuit {
 public:
  explicit Circuit(int n);
  Circuit(int n, std::vector<Gate> gates);

  int num_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  Circuit& add(Gate gate);
  /// Appends every gate of `other` (same register width).
  Circuit& append(const Circuit& other);

  /// Inverse circuit: reversed order, each gate inverted.
  Circuit adjoint() const;

  bool operator==(const Circuit&) const = default;

 private:
  int n_;
  std::vector<Gate> gates_;
};

/// Sequential concatenation: `first` then `second` in time.
Circuit then(const Circuit& first, const Circuit& second);

void apply_gate(StateVector& state, const Gate& gate);
StateVector run_circuit(const Circuit& circuit, StateVector initial);
/// Runs the circuit on |0...0>.
StateVector prepare(const Circuit& circuit);

/// Column k is run_circuit(circuit, |k>).
Eigen::MatrixXcd circuit_to_matrix(const Circuit& circuit);

/// Same gates on n+1 qubits, each gaining qubit n as an extra control.
Circuit controlled(const Circuit& circuit);

/// <state|Z_j|state>
double expectation_zj(const StateVector& state, int j);

/// Re<psi|U|psi> with |psi> = prepared|0>, computed without an ancilla.
double hadamard_test_exact(const Circuit& prepared, const Circuit& tested);

/// The (n+1)-qubit circuit: prepared on qubits 0..n-1, H on the ancilla
/// (qubit n), controlled(tested), H on the ancilla.
Circuit hadamard_test_circuit(const Circuit& prepared, const Circuit& tested);

/// Exact probability of measuring the Hadamard-test ancilla in |0>.
double hadamard_test_p0(const Circuit& prepared, const Circuit& tested);

struct ShotResult {
  std::uint64_t shots = 0;
  std::map<int, std::uint64_t> counts;  // ancilla bit -> occurrences
};

/// Draws `shots` ancilla outcomes with P(0) = p0.
ShotResult sample_ancilla(double p0, std::uint64_t shots, std::uint64_t seed);

/// P^(0) - P^(1) estimated from `shots` samples of the ancilla.
double hadamard_test_sampled(const Circuit& prepared, const Circuit& tested,
                             std::uint64_t shots, std::uint64_t seed);

/// Deterministic seed mixing (splitmix64 finalizer over the inputs).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace vqls
