#include "vqls/ansatz.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace vqls {

namespace {

void check_theta(const AnsatzSpec& spec, const std::vector<double>& theta) {
  if (spec.layers < 1) throw std::invalid_argument("ansatz needs at least one layer");
  if (theta.size() != spec.parameter_count()) {
    throw std::invalid_argument(fmt::format("{} expects {} parameters, got {}", to_string(spec.kind),
                                            spec.parameter_count(), theta.size()));
  }
}

Circuit ansatz_prefix(const AnsatzSpec& spec) {
  return spec.precondition_b ? b_preparation(spec.n) : Circuit(spec.n);
}

void add_rotation_layer(Circuit& c, const AnsatzSpec& spec, const std::vector<double>& theta,
                        int layer) {
  for (int q = 0; q < spec.n; ++q) {
    c.add(Gate::ry(q, theta[static_cast<std::size_t>(layer * spec.n + q)]));
  }
}

}  // namespace

std::string to_string(AnsatzKind kind) { return kind == AnsatzKind::GEA ? "gea" : "hea"; }

AnsatzSpec default_ansatz(AnsatzKind kind, int n) {
  return {kind, n, kind == AnsatzKind::GEA ? kDefaultGeaLayers : kDefaultHeaLayers, true};
}

Circuit b_preparation(int n) {
  Circuit c(n);
  for (int q = 0; q < n; ++q) c.add(Gate::h(q));
  return c;
}

Circuit build_gea(const AnsatzSpec& spec, const std::vector<double>& theta) {
  if (spec.kind != AnsatzKind::GEA) throw std::invalid_argument("build_gea: spec is not GEA");
  check_theta(spec, theta);
  Circuit c = ansatz_prefix(spec);
  for (int layer = 0; layer < spec.layers; ++layer) {
    add_rotation_layer(c, spec, theta, layer);
    for (int a = 0; a < spec.n; ++a) {
      for (int b = a + 1; b < spec.n; ++b) c.add(Gate::cz(a, b));
    }
  }
  return c;
}

Circuit build_hea(const AnsatzSpec& spec, const std::vector<double>& theta) {
  if (spec.kind != AnsatzKind::HEA) throw std::invalid_argument("build_hea: spec is not HEA");
  check_theta(spec, theta);
  Circuit c = ansatz_prefix(spec);
  for (int layer = 0; layer < spec.layers; ++layer) {
    add_rotation_layer(c, spec, theta, layer);
    for (int a = layer % 2; a + 1 < spec.n; a += 2) c.add(Gate::cz(a, a + 1));
  }
  return c;
}

Circuit build_ansatz(const AnsatzSpec& spec, const std::vector<double>& theta) {
  return spec.kind == AnsatzKind::GEA ? build_gea(spec, theta) : build_hea(spec, theta);
}

std::vector<double> init_params(std::size_t count, double q_delta, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("init_params: count must be positive");
  if (!(q_delta > 0.0) || q_delta > 1.0) {
    throw std::invalid_argument(fmt::format("init_params: q_delta={} outside (0, 1]", q_delta));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, std::sqrt(q_delta));
  std::vector<double> theta(count);
  for (auto& v : theta) v = dist(rng);
  return theta;
}

}  // namespace vqls
