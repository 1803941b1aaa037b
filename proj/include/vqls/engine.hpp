#pragma once

// Variational linear-solver engine: normalized global/local costs assembled
// from Hadamard-test terms, circuit-evaluation accounting, parameter-shift
// gradients and the optimization loop.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vqls/ansatz.hpp"
#include "vqls/poisson.hpp"
#include "vqls/qsim.hpp"

namespace vqls {

enum class CostKind { GlobalNormalized, LocalNormalized };
std::string to_string(CostKind kind);

/// How each term is obtained: an exact statevector inner product, or a
/// Hadamard-test job sampled with `shots` shots.
struct EvalMode {
  bool sampled = false;
  std::uint64_t shots = 1'000'000;

  static EvalMode exact() { return {}; }
  static EvalMode sampled_with(std::uint64_t shots) { return {true, shots}; }
};

enum class TermFamily { beta, gamma_local, gamma_global };

/// Identifies one expectation value in the cost. Canonical keys have
/// l <= l_prime; j is -1 outside the local numerator.
struct TermKey {
  TermFamily family = TermFamily::beta;
  int l = 0;
  int l_prime = 0;
  int j = -1;

  static TermKey canonical(TermFamily family, int l, int l_prime, int j = -1);
  std::uint64_t hash() const;
  auto operator<=>(const TermKey&) const = default;
};

struct CostBreakdown {
  double cost = 0.0;
  double numerator = 0.0;    // full double (triple) sum, symmetric pairs expanded
  double denominator = 0.0;  // sum_{l,l'} c_l c_l' beta_ll'
  std::map<TermKey, double> term_values;
  std::size_t unique_circuit_count = 0;
};

/// Everything fixed across one optimization: the decomposition, U_b and
/// the cost definition.
struct CostProblem {
  Decomposition decomposition;
  Circuit b_prep;
  CostKind kind = CostKind::LocalNormalized;

  int num_qubits() const { return decomposition.system.n; }
};

CostProblem make_problem(DecompositionKind decomposition, int n, CostKind kind);

// ---- individual terms ------------------------------------------------------

/// Re<psi|A_l^dag A_l'|psi>, |psi> = ansatz|0>. Exactly 1 with no circuit
/// when l == l'. Sampled mode runs one Hadamard test of A_l' then A_l^dag.
double beta_term(const Decomposition& decomp, const Circuit& ansatz, int l, int l_prime,
                 const EvalMode& mode = {}, std::uint64_t seed = 0);

/// Re<psi|A_l^dag U Z_j U^dag A_l'|psi>.
double gamma_local_term(const Decomposition& decomp, const Circuit& ansatz, const Circuit& b_prep,
                        int l, int l_prime, int j, const EvalMode& mode = {},
                        std::uint64_t seed = 0);

/// Re<0|U^dag A_l V|0>, the overlap whose products form the global numerator.
double global_overlap(const Decomposition& decomp, const Circuit& ansatz, const Circuit& b_prep,
                      int l, const EvalMode& mode = {}, std::uint64_t seed = 0);

// ---- costs -------------------------------------------------------------------

/// Evaluates the problem's cost for an arbitrary state-preparation circuit.
/// With `deduplicate` off every (l, l', j) combination is evaluated
/// separately; the value is the same, only the bookkeeping differs.
CostBreakdown evaluate_cost(const CostProblem& problem, const Circuit& ansatz,
                            const EvalMode& mode = {}, std::uint64_t seed = 0,
                            bool deduplicate = true);

CostBreakdown local_cost(const CostProblem& problem, const Circuit& ansatz,
                         const EvalMode& mode = {}, std::uint64_t seed = 0);
CostBreakdown global_cost(const CostProblem& problem, const Circuit& ansatz,
                          const EvalMode& mode = {}, std::uint64_t seed = 0);

/// Recomputes the normalized cost from the stored term values.
double cost_from_terms(const CostProblem& problem, const CostBreakdown& breakdown);

/// Unique Hadamard-test circuits per local-cost evaluation with c terms on
/// n qubits: (c/2)[n(c+1) + c - 1].
std::uint64_t count_unique_circuits(std::uint64_t c, std::uint64_t n);

/// The canonical keys a deduplicated local-cost evaluation needs circuits for.
std::vector<TermKey> enumerate_local_terms(int c, int n);

/// 1/2 Tr| |a><a| - |b><b| | for pure states, sqrt(1 - |<a|b>|^2).
double trace_distance(const StateVector& a, const StateVector& b);
double trace_distance(const StateVector& a, const std::vector<double>& b);

// ---- optimization -------------------------------------------------------------

enum class OptimizerKind { Adam, SPSA };
std::string to_string(OptimizerKind kind);

struct OptimizerSettings {
  OptimizerKind kind = OptimizerKind::Adam;
  double step = 0.02;
  /// Adam step at iteration k is step / (1 + step_decay * k).
  double step_decay = 0.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  // SPSA gain sequences a_k = a / (k + 1 + A)^alpha, c_k = c / (k + 1)^gamma.
  double spsa_a = 0.2;
  double spsa_c = 0.1;
  double spsa_stability = 10.0;
  double spsa_alpha = 0.602;
  double spsa_gamma = 0.101;
};

struct RunConfig {
  int n = 3;
  DecompositionKind decomposition = DecompositionKind::HED;
  AnsatzSpec ansatz = default_ansatz(AnsatzKind::GEA, 3);
  CostKind cost = CostKind::LocalNormalized;
  EvalMode mode;
  double q_delta = 0.01;
  std::uint64_t seed = 0;
  double epsilon_target = 0.01;
  int max_iterations = 2000;
  OptimizerSettings optimizer;
  /// Stop once modeled hardware time (1 minute per circuit evaluation)
  /// exceeds this; 0 disables the budget.
  double budget_minutes = 0.0;
  /// Starting point; drawn from init_params when empty.
  std::vector<double> initial_theta;
};

/// Throws std::invalid_argument on an inconsistent configuration.
void validate(const RunConfig& config);

CostProblem make_problem(const RunConfig& config);

/// Cost at theta for the configured ansatz and cost kind.
CostBreakdown cost_at(const RunConfig& config, const std::vector<double>& theta,
                      std::uint64_t seed = 0);

/// Parameter-shift gradient. The numerator and denominator of the
/// normalized cost are each expectation values, so each is shifted by
/// +-pi/2 and the quotient rule combines them.
std::vector<double> gradient(const RunConfig& config, const std::vector<double>& theta,
                             std::uint64_t seed = 0);

/// Convergence threshold from the cost lower bounds: eps^2/(n kappa^2) for
/// the local cost, eps^2/kappa^2 for the global one.
double convergence_threshold(CostKind kind, int n, double epsilon, double kappa);

/// Circuit evaluations charged for one optimizer iteration that takes a
/// step (cost plus gradient) given N_q circuits per cost evaluation.
std::uint64_t circuits_per_step(const RunConfig& config, std::uint64_t per_cost);

enum class RunStatus { Converged, MaxIterations, Budget, Failed };
std::string to_string(RunStatus status);

struct IterationRecord {
  int iteration = 0;
  double cost = 0.0;
  std::vector<double> theta;
  std::uint64_t circuit_evaluations = 0;  // cumulative
  double trace_distance = 0.0;            // against the classical solution
};

struct RunRecord {
  RunConfig config;
  double kappa = 0.0;
  double threshold = 0.0;
  std::vector<IterationRecord> iterations;
  RunStatus status = RunStatus::MaxIterations;
  bool converged = false;
  /// Optimizer steps taken before the threshold was met; set only on
  /// convergence.
  std::optional<int> iterations_to_threshold;
  double final_cost = 0.0;
  double final_trace_distance = 1.0;
  std::vector<double> final_theta;
  std::uint64_t total_circuit_evaluations = 0;
  double wall_seconds = 0.0;
  std::string error;
};

RunRecord optimize(const RunConfig& config);

}  // namespace vqls
