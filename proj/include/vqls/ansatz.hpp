#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqls/qsim.hpp"

namespace vqls {

enum class AnsatzKind { GEA, HEA };

std::string to_string(AnsatzKind kind);

inline constexpr int kDefaultGeaLayers = 3;
inline constexpr int kDefaultHeaLayers = 8;

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::GEA;
  int n = 3;
  int layers = kDefaultGeaLayers;
  bool precondition_b = true;  // prepend U_b = H on every qubit

  std::size_t parameter_count() const {
    return static_cast<std::size_t>(layers) * static_cast<std::size_t>(n);
  }
};

/// Default spec for a kind: 3 layers for GEA, 8 for HEA.
AnsatzSpec default_ansatz(AnsatzKind kind, int n);

/// U_b = H^{(x)n}, preparing the uniform right-hand side.
Circuit b_preparation(int n);

/// Globally-entangling ansatz: per layer an Ry on every qubit, then a CZ on
/// every unordered qubit pair.
Circuit build_gea(const AnsatzSpec& spec, const std::vector<double>& theta);

/// Hardware-efficient baseline: per layer an Ry on every qubit, then CZs on
/// nearest neighbours in a brick pattern ((0,1),(2,3),... on even layers,
/// (1,2),(3,4),... on odd layers).
Circuit build_hea(const AnsatzSpec& spec, const std::vector<double>& theta);

/// Dispatches on spec.kind.
Circuit build_ansatz(const AnsatzSpec& spec, const std::vector<double>& theta);

/// Angles drawn i.i.d. from a zero-mean normal with variance q_delta.
std::vector<double> init_params(std::size_t count, double q_delta, std::uint64_t seed);

}  // namespace vqls
