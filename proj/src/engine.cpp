#include "vqls/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "vqls/reference.hpp"

namespace vqls {

namespace {

constexpr double kDegenerateDenominator = 1e-14;

void check_term_index(const Decomposition& d, int l) {
  if (l < 0 || static_cast<std::size_t>(l) >= d.size()) {
    throw std::out_of_range(fmt::format("term index {} outside [0, {})", l, d.size()));
  }
}

std::uint64_t term_seed(std::uint64_t seed, const TermKey& key) { return mix_seed(seed, key.hash()); }

// Statevector images shared by every exact term of one cost evaluation.
struct ExactImages {
  std::vector<StateVector> a_psi;     // A_l |psi>
  std::vector<StateVector> u_a_psi;   // U^dag A_l |psi>   (local cost)
  std::vector<cplx> overlaps;         // <b|A_l|psi>       (global cost)
};

ExactImages exact_images(const CostProblem& p, const Circuit& ansatz) {
  const StateVector psi = prepare(ansatz);
  const Circuit u_dag = p.b_prep.adjoint();
  ExactImages out;
  for (const auto& t : p.decomposition.terms) out.a_psi.push_back(run_circuit(t.circuit, psi));
  if (p.kind == CostKind::LocalNormalized) {
    for (const auto& s : out.a_psi) out.u_a_psi.push_back(run_circuit(u_dag, s));
  } else {
    const StateVector b = prepare(p.b_prep);
    for (const auto& s : out.a_psi) out.overlaps.push_back(inner(b, s));
  }
  return out;
}

double z_weighted_inner(const StateVector& a, const StateVector& b, int j) {
  const std::uint64_t bit = std::uint64_t{1} << j;
  double acc = 0.0;
  const auto x = a.amps();
  const auto y = b.amps();
  for (std::uint64_t k = 0; k < x.size(); ++k) {
    const double v = (std::conj(x[k]) * y[k]).real();
    acc += (k & bit) ? -v : v;
  }
  return acc;
}

double finish_cost(const CostProblem& p, CostBreakdown& bd) {
  if (bd.denominator <= kDegenerateDenominator) {
    throw std::runtime_error(fmt::format("cost denominator {} is degenerate", bd.denominator));
  }
  if (p.kind == CostKind::LocalNormalized) {
    bd.cost = 0.5 - bd.numerator / (2.0 * p.num_qubits() * bd.denominator);
  } else {
    bd.cost = 1.0 - bd.numerator / bd.denominator;
  }
  return bd.cost;
}

}  // namespace

std::string to_string(CostKind kind) {
  return kind == CostKind::LocalNormalized ? "local" : "global";
}

std::string to_string(OptimizerKind kind) { return kind == OptimizerKind::Adam ? "adam" : "spsa"; }

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "converged";
    case RunStatus::MaxIterations: return "max_iterations";
    case RunStatus::Budget: return "budget";
    case RunStatus::Failed: return "failed";
  }
  return "?";
}

TermKey TermKey::canonical(TermFamily family, int l, int l_prime, int j) {
  if (l > l_prime) std::swap(l, l_prime);
  return {family, l, l_prime, j};
}

std::uint64_t TermKey::hash() const {
  std::uint64_t h = mix_seed(static_cast<std::uint64_t>(family), static_cast<std::uint64_t>(l));
  h = mix_seed(h, static_cast<std::uint64_t>(l_prime));
  return mix_seed(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(j)));
}

CostProblem make_problem(DecompositionKind decomposition, int n, CostKind kind) {
  Decomposition d = decomposition == DecompositionKind::HED ? hed_terms(n) : pauli_projection(n);
  return {std::move(d), b_preparation(n), kind};
}

// ---------------------------------------------------------------------------
// Terms

double beta_term(const Decomposition& decomp, const Circuit& ansatz, int l, int l_prime,
                 const EvalMode& mode, std::uint64_t seed) {
  check_term_index(decomp, l);
  check_term_index(decomp, l_prime);
  if (l == l_prime) return 1.0;
  const Circuit& a_l = decomp.terms[static_cast<std::size_t>(l)].circuit;
  const Circuit& a_lp = decomp.terms[static_cast<std::size_t>(l_prime)].circuit;
  const Circuit tested = then(a_lp, a_l.adjoint());
  if (mode.sampled) return hadamard_test_sampled(ansatz, tested, mode.shots, seed);
  return hadamard_test_exact(ansatz, tested);
}

double gamma_local_term(const Decomposition& decomp, const Circuit& ansatz, const Circuit& b_prep,
                        int l, int l_prime, int j, const EvalMode& mode, std::uint64_t seed) {
  check_term_index(decomp, l);
  check_term_index(decomp, l_prime);
  const int n = ansatz.num_qubits();
  if (j < 0 || j >= n) throw std::out_of_range("gamma_local_term: qubit index");
  Circuit tested = decomp.terms[static_cast<std::size_t>(l_prime)].circuit;
  tested.append(b_prep.adjoint());
  tested.add(Gate::z(j));
  tested.append(b_prep);
  tested.append(decomp.terms[static_cast<std::size_t>(l)].circuit.adjoint());
  if (mode.sampled) return hadamard_test_sampled(ansatz, tested, mode.shots, seed);
  return hadamard_test_exact(ansatz, tested);
}

double global_overlap(const Decomposition& decomp, const Circuit& ansatz, const Circuit& b_prep,
                      int l, const EvalMode& mode, std::uint64_t seed) {
  check_term_index(decomp, l);
  Circuit tested = ansatz;
  tested.append(decomp.terms[static_cast<std::size_t>(l)].circuit);
  tested.append(b_prep.adjoint());
  const Circuit from_zero(ansatz.num_qubits());
  if (mode.sampled) return hadamard_test_sampled(from_zero, tested, mode.shots, seed);
  return hadamard_test_exact(from_zero, tested);
}

// ---------------------------------------------------------------------------
// Costs

std::uint64_t count_unique_circuits(std::uint64_t c, std::uint64_t n) {
  // c[n(c+1) + c - 1] is always even: c odd makes c+1 and c-1 even.
  return c * (n * (c + 1) + c - 1) / 2;
}

std::vector<TermKey> enumerate_local_terms(int c, int n) {
  std::vector<TermKey> keys;
  for (int l = 0; l < c; ++l) {
    for (int lp = l; lp < c; ++lp) {
      if (l != lp) keys.push_back(TermKey::canonical(TermFamily::beta, l, lp));
      for (int j = 0; j < n; ++j) keys.push_back(TermKey::canonical(TermFamily::gamma_local, l, lp, j));
    }
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

CostBreakdown evaluate_cost(const CostProblem& p, const Circuit& ansatz, const EvalMode& mode,
                            std::uint64_t seed, bool deduplicate) {
  const int n = p.num_qubits();
  if (ansatz.num_qubits() != n) throw std::invalid_argument("evaluate_cost: qubit-count mismatch");
  const auto& terms = p.decomposition.terms;
  const int c = static_cast<int>(terms.size());
  const bool local = p.kind == CostKind::LocalNormalized;

  std::optional<ExactImages> img;
  if (!mode.sampled) img = exact_images(p, ansatz);

  CostBreakdown bd;
  auto beta = [&](int l, int lp) {
    if (!mode.sampled) return inner(img->a_psi[l], img->a_psi[lp]).real();
    return beta_term(p.decomposition, ansatz, l, lp, mode,
                     term_seed(seed, TermKey::canonical(TermFamily::beta, l, lp)));
  };
  auto gamma = [&](int l, int lp, int j) {
    if (!mode.sampled) return z_weighted_inner(img->u_a_psi[l], img->u_a_psi[lp], j);
    return gamma_local_term(p.decomposition, ansatz, p.b_prep, l, lp, j, mode,
                            term_seed(seed, TermKey::canonical(TermFamily::gamma_local, l, lp, j)));
  };
  std::vector<double> sampled_overlaps;
  if (!local && mode.sampled) {
    for (int l = 0; l < c; ++l) {
      sampled_overlaps.push_back(global_overlap(
          p.decomposition, ansatz, p.b_prep, l, mode,
          term_seed(seed, TermKey::canonical(TermFamily::gamma_global, l, l, -2))));
    }
  }
  auto gamma_global = [&](int l, int lp) {
    if (!mode.sampled) return (std::conj(img->overlaps[l]) * img->overlaps[lp]).real();
    return sampled_overlaps[l] * sampled_overlaps[lp];
  };

  if (deduplicate) {
    for (int l = 0; l < c; ++l) {
      for (int lp = l; lp < c; ++lp) {
        const double weight = terms[l].coeff * terms[lp].coeff * (l == lp ? 1.0 : 2.0);
        if (l == lp) {
          bd.denominator += weight;  // beta_ll = 1, no circuit
        } else {
          const double v = beta(l, lp);
          bd.term_values[TermKey::canonical(TermFamily::beta, l, lp)] = v;
          bd.denominator += weight * v;
          ++bd.unique_circuit_count;
        }
        if (local) {
          for (int j = 0; j < n; ++j) {
            const double v = gamma(l, lp, j);
            bd.term_values[TermKey::canonical(TermFamily::gamma_local, l, lp, j)] = v;
            bd.numerator += weight * v;
            ++bd.unique_circuit_count;
          }
        } else {
          const double v = gamma_global(l, lp);
          bd.term_values[TermKey::canonical(TermFamily::gamma_global, l, lp)] = v;
          bd.numerator += weight * v;
        }
      }
    }
    if (!local) bd.unique_circuit_count += static_cast<std::size_t>(c);  // one overlap per term
  } else {
    for (int l = 0; l < c; ++l) {
      for (int lp = 0; lp < c; ++lp) {
        const double weight = terms[l].coeff * terms[lp].coeff;
        const double b = l == lp && mode.sampled ? 1.0 : beta(l, lp);
        bd.term_values[{TermFamily::beta, l, lp, -1}] = b;
        bd.denominator += weight * b;
        ++bd.unique_circuit_count;
        if (local) {
          for (int j = 0; j < n; ++j) {
            const double v = gamma(l, lp, j);
            bd.term_values[{TermFamily::gamma_local, l, lp, j}] = v;
            bd.numerator += weight * v;
            ++bd.unique_circuit_count;
          }
        } else {
          const double v = gamma_global(l, lp);
          bd.term_values[{TermFamily::gamma_global, l, lp, -1}] = v;
          bd.numerator += weight * v;
          ++bd.unique_circuit_count;
        }
      }
    }
  }
  finish_cost(p, bd);
  return bd;
}

CostBreakdown local_cost(const CostProblem& problem, const Circuit& ansatz, const EvalMode& mode,
                         std::uint64_t seed) {
  if (problem.kind != CostKind::LocalNormalized) throw std::invalid_argument("local_cost: problem is global");
  return evaluate_cost(problem, ansatz, mode, seed);
}

CostBreakdown global_cost(const CostProblem& problem, const Circuit& ansatz, const EvalMode& mode,
                          std::uint64_t seed) {
  if (problem.kind != CostKind::GlobalNormalized) throw std::invalid_argument("global_cost: problem is local");
  return evaluate_cost(problem, ansatz, mode, seed);
}

double cost_from_terms(const CostProblem& p, const CostBreakdown& bd) {
  const auto& terms = p.decomposition.terms;
  CostBreakdown rebuilt;
  // Keys with l > l' only appear when deduplication was off; then every
  // ordered pair is present and carries unit multiplicity.
  const bool expanded = std::any_of(bd.term_values.begin(), bd.term_values.end(),
                                    [](const auto& kv) { return kv.first.l > kv.first.l_prime; });
  if (!expanded) {
    for (const auto& t : terms) rebuilt.denominator += t.coeff * t.coeff;
  }
  for (const auto& [key, value] : bd.term_values) {
    const double mult = (!expanded && key.l != key.l_prime) ? 2.0 : 1.0;
    const double w = terms[key.l].coeff * terms[key.l_prime].coeff * mult * value;
    if (key.family == TermFamily::beta) {
      rebuilt.denominator += w;
    } else {
      rebuilt.numerator += w;
    }
  }
  return finish_cost(p, rebuilt);
}

double trace_distance(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("trace_distance: qubit-count mismatch");
  if (std::abs(a.norm() - 1.0) > 1e-8 || std::abs(b.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("trace_distance: input state is not normalized");
  }
  const double overlap = std::norm(inner(a, b));
  return std::sqrt(std::max(0.0, 1.0 - overlap));
}

double trace_distance(const StateVector& a, const std::vector<double>& b) {
  std::vector<cplx> amps(b.begin(), b.end());
  return trace_distance(a, StateVector(a.num_qubits(), std::move(amps)));
}

// ---------------------------------------------------------------------------
// Optimization

void validate(const RunConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("run config: n must be at least 2");
  if (cfg.ansatz.n != cfg.n) throw std::invalid_argument("run config: ansatz width differs from n");
  if (!(cfg.epsilon_target > 0.0 && cfg.epsilon_target < 1.0)) {
    throw std::invalid_argument("run config: epsilon_target must lie in (0, 1)");
  }
  if (cfg.mode.sampled && cfg.mode.shots < 1) throw std::invalid_argument("run config: shots must be >= 1");
  if (cfg.max_iterations < 0) throw std::invalid_argument("run config: max_iterations is negative");
  if (!(cfg.q_delta > 0.0 && cfg.q_delta <= 1.0)) {
    throw std::invalid_argument("run config: q_delta must lie in (0, 1]");
  }
  if (cfg.budget_minutes < 0.0) throw std::invalid_argument("run config: negative budget");
  if (!cfg.initial_theta.empty() && cfg.initial_theta.size() != cfg.ansatz.parameter_count()) {
    throw std::invalid_argument("run config: initial_theta has the wrong length");
  }
}

CostProblem make_problem(const RunConfig& config) {
  return make_problem(config.decomposition, config.n, config.cost);
}

namespace {

CostBreakdown cost_at(const RunConfig& cfg, const CostProblem& p, const std::vector<double>& theta,
                      std::uint64_t seed) {
  return evaluate_cost(p, build_ansatz(cfg.ansatz, theta), cfg.mode, seed);
}

std::vector<double> gradient_from_base(const RunConfig& cfg, const CostProblem& p,
                                       const std::vector<double>& theta, const CostBreakdown& base,
                                       std::uint64_t seed) {
  const double scale = p.kind == CostKind::LocalNormalized ? 1.0 / (2.0 * p.num_qubits()) : 1.0;
  const double num = base.numerator;
  const double den = base.denominator;
  std::vector<double> grad(theta.size());
  std::vector<double> shifted = theta;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    shifted[i] = theta[i] + std::numbers::pi / 2.0;
    const CostBreakdown plus = cost_at(cfg, p, shifted, mix_seed(seed, 2 * i + 1));
    shifted[i] = theta[i] - std::numbers::pi / 2.0;
    const CostBreakdown minus = cost_at(cfg, p, shifted, mix_seed(seed, 2 * i + 2));
    shifted[i] = theta[i];
    const double d_num = 0.5 * (plus.numerator - minus.numerator);
    const double d_den = 0.5 * (plus.denominator - minus.denominator);
    grad[i] = -scale * (d_num * den - num * d_den) / (den * den);
  }
  return grad;
}

std::vector<double> spsa_gradient(const RunConfig& cfg, const CostProblem& p,
                                  const std::vector<double>& theta, int iteration,
                                  std::uint64_t seed) {
  const auto& o = cfg.optimizer;
  const double ck = o.spsa_c / std::pow(iteration + 1.0, o.spsa_gamma);
  std::mt19937_64 rng(mix_seed(seed, 0x5350534155ULL));
  std::bernoulli_distribution coin(0.5);
  std::vector<double> delta(theta.size());
  for (auto& d : delta) d = coin(rng) ? 1.0 : -1.0;
  std::vector<double> plus = theta;
  std::vector<double> minus = theta;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    plus[i] += ck * delta[i];
    minus[i] -= ck * delta[i];
  }
  const double diff =
      cost_at(cfg, p, plus, mix_seed(seed, 1)).cost - cost_at(cfg, p, minus, mix_seed(seed, 2)).cost;
  std::vector<double> grad(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) grad[i] = diff / (2.0 * ck * delta[i]);
  return grad;
}

}  // namespace

CostBreakdown cost_at(const RunConfig& config, const std::vector<double>& theta, std::uint64_t seed) {
  return cost_at(config, make_problem(config), theta, seed);
}

std::vector<double> gradient(const RunConfig& config, const std::vector<double>& theta,
                             std::uint64_t seed) {
  const CostProblem p = make_problem(config);
  const CostBreakdown base = cost_at(config, p, theta, seed);
  return gradient_from_base(config, p, theta, base, seed);
}

double convergence_threshold(CostKind kind, int n, double epsilon, double kappa) {
  const double g = epsilon * epsilon / (kappa * kappa);
  return kind == CostKind::LocalNormalized ? g / n : g;
}

std::uint64_t circuits_per_step(const RunConfig& config, std::uint64_t per_cost) {
  if (config.optimizer.kind == OptimizerKind::SPSA) return 3 * per_cost;
  return per_cost * (1 + 2 * config.ansatz.parameter_count());
}

RunRecord optimize(const RunConfig& config) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.config = config;
  rec.kappa = condition_number(config.n);
  rec.threshold = convergence_threshold(config.cost, config.n, config.epsilon_target, rec.kappa);

  const CostProblem problem = make_problem(config);
  const ClassicalSolution classical = thomas_solve(config.n);
  std::vector<double> theta = config.initial_theta.empty()
                                  ? init_params(config.ansatz.parameter_count(), config.q_delta, config.seed)
                                  : config.initial_theta;

  const auto& opt = config.optimizer;
  std::vector<double> m(theta.size(), 0.0);
  std::vector<double> v(theta.size(), 0.0);
  std::uint64_t evaluations = 0;
  std::uint64_t per_cost = 0;

  auto finish = [&](RunStatus status) {
    rec.status = status;
    rec.converged = status == RunStatus::Converged;
    rec.final_theta = theta;
    rec.total_circuit_evaluations = evaluations;
    if (!rec.iterations.empty()) {
      rec.final_cost = rec.iterations.back().cost;
      rec.final_trace_distance = rec.iterations.back().trace_distance;
    }
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
  };

  for (int it = 0;; ++it) {
    const std::uint64_t step_seed = mix_seed(config.seed, static_cast<std::uint64_t>(it));
    CostBreakdown bd;
    try {
      bd = cost_at(config, problem, theta, step_seed);
    } catch (const std::exception& e) {
      rec.error = e.what();
      return finish(RunStatus::Failed);
    }
    per_cost = bd.unique_circuit_count;
    IterationRecord entry;
    entry.iteration = it;
    entry.cost = bd.cost;
    entry.theta = theta;
    entry.trace_distance = trace_distance(prepare(build_ansatz(config.ansatz, theta)),
                                          classical.x_normalized);
    if (!std::isfinite(bd.cost)) {
      evaluations += per_cost;
      entry.circuit_evaluations = evaluations;
      rec.iterations.push_back(std::move(entry));
      rec.error = "non-finite cost";
      return finish(RunStatus::Failed);
    }
    if (bd.cost < rec.threshold || it >= config.max_iterations) {
      evaluations += per_cost;
      entry.circuit_evaluations = evaluations;
      rec.iterations.push_back(std::move(entry));
      if (bd.cost < rec.threshold) {
        rec.iterations_to_threshold = it;
        return finish(RunStatus::Converged);
      }
      return finish(RunStatus::MaxIterations);
    }

    std::vector<double> grad = opt.kind == OptimizerKind::SPSA
                                   ? spsa_gradient(config, problem, theta, it, step_seed)
                                   : gradient_from_base(config, problem, theta, bd, step_seed);
    evaluations += circuits_per_step(config, per_cost);
    entry.circuit_evaluations = evaluations;
    rec.iterations.push_back(std::move(entry));

    if (opt.kind == OptimizerKind::Adam) {
      const double t = it + 1.0;
      const double bc1 = 1.0 - std::pow(opt.beta1, t);
      const double bc2 = 1.0 - std::pow(opt.beta2, t);
      const double step = opt.step / (1.0 + opt.step_decay * it);
      for (std::size_t i = 0; i < theta.size(); ++i) {
        m[i] = opt.beta1 * m[i] + (1.0 - opt.beta1) * grad[i];
        v[i] = opt.beta2 * v[i] + (1.0 - opt.beta2) * grad[i] * grad[i];
        theta[i] -= step * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + opt.adam_eps);
      }
    } else {
      const double ak = opt.spsa_a / std::pow(it + 1.0 + opt.spsa_stability, opt.spsa_alpha);
      for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= ak * grad[i];
    }

    if (config.budget_minutes > 0.0 && static_cast<double>(evaluations) > config.budget_minutes) {
      return finish(RunStatus::Budget);
    }
  }
}

}  // namespace vqls
