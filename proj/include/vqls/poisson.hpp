#pragma once

// The 1D discretized Poisson matrix (2 on the diagonal, -1 off it) and its
// circuit decompositions A = sum_l c_l A_l with every A_l a gate circuit.
//
// Two decompositions are provided:
//  * HED, the four-term high-entanglement form 2.5 I - L1 - L2 - 0.5 L3,
//    whose term count does not grow with the register;
//  * Pauli, one term per Pauli string with nonzero trace overlap, whose term
//    count grows exponentially.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vqls/qsim.hpp"

namespace vqls {

enum class DecompositionKind { Pauli, HED };

std::string to_string(DecompositionKind kind);

struct PoissonSystem {
  int n = 2;
  std::size_t dim() const { return std::size_t{1} << n; }
};

struct DecompositionTerm {
  double coeff = 0.0;
  Circuit circuit;
  std::string label;
};

struct Decomposition {
  PoissonSystem system;
  DecompositionKind kind = DecompositionKind::HED;
  std::vector<DecompositionTerm> terms;

  std::size_t size() const { return terms.size(); }
  /// sum_l c_l * matrix(A_l). Dense, so n <= 10.
  Eigen::MatrixXcd reconstruct() const;
};

Eigen::MatrixXd build_dpem_dense(int n);

/// X on qubit 0: the pairwise swap (2k, 2k+1).
Circuit l1_circuit(int n);

/// Carry gadget C_i, 1 <= i <= n-1: CXs from qubit i onto each lower qubit,
/// the multi-controlled X from all lower qubits onto i, then the CXs again in
/// mirrored order. Swaps basis states m and m+1 whenever the low i+1 bits of
/// m are 0 followed by i ones.
Circuit c_gate(int i, int n);

/// C_1 ... C_{n-1}: swaps (2k+1, 2k+2), fixes 0 and N-1.
Circuit l2_circuit(int n);

/// diag(-1, 1, ..., 1, -1): mCZ, X on every qubit, mCZ, X on every qubit.
Circuit l3_circuit(int n);

Decomposition hed_terms(int n);

/// Tensor-product Pauli string as a circuit. Labels are written most
/// significant qubit first, so "IX" puts X on qubit 0.
Circuit pauli_string_circuit(const std::string& label);

/// The hard-coded 4x4 and 8x8 Pauli tables.
Decomposition pauli_terms_explicit(int n);

/// Pauli coefficients c_P = Tr(P A) / 2^n over all 4^n strings, keeping
/// |c_P| > 1e-12. n <= 6.
Decomposition pauli_projection(int n);

struct DecompositionStats {
  std::size_t term_count = 0;
  std::size_t max_circuit_gates = 0;
};

/// Term count and the gate count of the largest term circuit. HED stats are
/// available for any n >= 2 without building the circuits densely; Pauli
/// stats require n <= 6.
DecompositionStats decomposition_stats(DecompositionKind kind, int n);

/// lambda_max / lambda_min of the n-qubit Poisson matrix, n <= 10.
double condition_number(int n);

}  // namespace vqls
