#pragma once

// Experiment plans, per-run logs, summary tables and report plots.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vqls/ansatz.hpp"
#include "vqls/engine.hpp"

namespace vqls {

/// Hardware time charged per circuit evaluation, mean +- half_width minutes.
struct TimeModel {
  double mean_minutes = 1.0;
  double half_width_minutes = 0.5;
};

struct ExperimentPlan {
  std::vector<int> qubits{3, 4, 5, 6, 7, 8, 9};
  std::vector<AnsatzKind> ansatz{AnsatzKind::GEA, AnsatzKind::HEA};
  std::vector<double> q_deltas{0.01, 0.1};
  int seeds = 5;
  std::uint64_t base_seed = 0;
  double epsilon_target = 0.01;
  /// Iteration budget per run, the stand-in for the hardware time-out.
  int max_iterations = 2000;
  double budget_minutes = 0.0;
  CostKind cost = CostKind::LocalNormalized;
  EvalMode mode;
  OptimizerSettings optimizer;
  TimeModel time_model;
  int gea_layers = kDefaultGeaLayers;
  int hea_layers = kDefaultHeaLayers;
  /// Runs executed concurrently.
  int jobs = 1;
};

/// Throws std::invalid_argument on empty ranges, a zero budget and the like.
void validate(const ExperimentPlan& plan);

/// Seed of run k in a cell; independent of the cell so every cell sees the
/// same initial-parameter streams.
std::uint64_t run_seed(const ExperimentPlan& plan, int k);

RunConfig make_run_config(const ExperimentPlan& plan, int n, AnsatzKind kind, double q_delta,
                          int k);

struct TimeToSolution {
  double minutes_low = 0.0;
  double minutes_mid = 0.0;
  double minutes_high = 0.0;
  double days_low = 0.0;
  double days_mid = 0.0;
  double days_high = 0.0;
};

TimeToSolution time_to_solution(std::uint64_t circuit_evaluations, const TimeModel& model = {});
TimeToSolution time_to_solution(const RunRecord& record, const TimeModel& model = {});

/// One summary row per plan cell (qubits x ansatz x q_delta).
struct CellSummary {
  int n = 0;
  std::string ansatz;
  double q_delta = 0.0;
  std::string cost;
  std::string mode;
  int seeds = 0;
  int converged = 0;
  int failed = 0;
  /// "converged" (every seed), "partial" or "timed_out" (no seed).
  std::string status;
  double threshold = 0.0;
  double kappa = 0.0;
  /// Medians over converged seeds; absent when none converged.
  std::optional<double> median_iterations;
  std::optional<double> median_circuit_evaluations;
  std::optional<double> median_days_mid;
  double median_final_cost = 0.0;
  double median_trace_distance = 0.0;

  bool operator==(const CellSummary&) const = default;
};

/// Fixed column order of summary.csv.
const std::vector<std::string>& summary_columns();
std::string summary_header();
std::string to_csv_row(const CellSummary& row);
CellSummary parse_summary_row(const std::string& line);
std::string write_summary_csv(const std::vector<CellSummary>& rows);
std::vector<CellSummary> read_summary_csv(const std::string& text);

CellSummary summarize_cell(const std::vector<RunRecord>& runs, const TimeModel& model);

/// Median of the values with non-converged runs counted as +infinity.
double censored_median(const std::vector<std::optional<double>>& values);

/// One JSON object per iteration followed by a final record.
std::string run_log_jsonl(const RunRecord& record);

struct ReportBundle {
  std::vector<RunRecord> runs;
  std::vector<CellSummary> summary;
  std::vector<std::filesystem::path> run_files;
  std::filesystem::path summary_file;
  std::vector<std::filesystem::path> plot_files;
};

/// Executes every cell x seed and writes runs/*.jsonl, summary.csv and
/// convergence plots into out_dir. Failed runs are recorded, not thrown.
ReportBundle run_plan(const ExperimentPlan& plan, const std::filesystem::path& out_dir);

struct ScalingRow {
  int n = 0;
  int hed_terms = 0;
  int hed_l2_gates = 0;   // the O(n^2) term, n^2 - 1
  int hed_max_gates = 0;
  std::optional<int> pauli_terms;
  std::optional<int> pauli_max_gates;
  std::optional<double> kappa;
  int gea_parameters = 0;
  int hea_parameters = 0;
};

/// HED for n = 2..12, Pauli projection for n = 2..6, kappa for n <= 10.
std::vector<ScalingRow> scaling_table(int n_min = 2, int n_max = 12);
std::string write_scaling_csv(const std::vector<ScalingRow>& rows);

/// Writes scaling.csv and its plots; returns the written paths.
std::vector<std::filesystem::path> scaling_report(const std::filesystem::path& out_dir);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;
};

/// Ordinary least squares y = slope * x + intercept; needs two distinct x.
std::optional<LinearFit> fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct MetricRow {
  int n = 0;
  std::string ansatz;
  double q_delta = 0.0;
  double iterations = 0.0;
  double circuit_evaluations = 0.0;
  double days_low = 0.0;
  double days_mid = 0.0;
  double days_high = 0.0;
  bool extrapolated = false;
};

/// Time-to-solution rows from a summary: converged cells as simulated,
/// missing ones from a line fit of log10(circuit evaluations) against n,
/// labelled extrapolated.
std::vector<MetricRow> metrics_from_summary(const std::vector<CellSummary>& summary,
                                            const TimeModel& model = {});
std::string write_metrics_csv(const std::vector<MetricRow>& rows);

/// Reads out_dir/summary.csv and writes metrics.csv plus plots.
std::vector<std::filesystem::path> report(const std::filesystem::path& out_dir,
                                          const TimeModel& model = {});

}  // namespace vqls
