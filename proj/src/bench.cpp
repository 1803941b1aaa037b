#include "vqls/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "vqls/poisson.hpp"
#include "vqls/svg_plot.hpp"

namespace vqls {

namespace {

constexpr double kMinutesPerDay = 1440.0;

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  for (auto& line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number in CSV: '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer in CSV: '" + s + "'");
  }
  return v;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : ""; }

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string mode_name(const EvalMode& mode) { return mode.sampled ? "sampled" : "exact"; }

std::string run_stem(const RunConfig& c) {
  return fmt::format("n{}_{}_q{}_seed{}", c.n, to_string(c.ansatz.kind), c.q_delta, c.seed);
}

std::filesystem::path write_plot(const std::filesystem::path& path, const PlotSpec& spec) {
  write_file(path, render_svg(spec));
  return path;
}

}  // namespace

void validate(const ExperimentPlan& plan) {
  if (plan.qubits.empty() || plan.ansatz.empty() || plan.q_deltas.empty()) {
    throw std::invalid_argument("experiment plan has an empty range");
  }
  if (plan.seeds < 1) throw std::invalid_argument("seeds per cell must be >= 1");
  if (plan.max_iterations < 1) throw std::invalid_argument("iteration budget must be >= 1");
  if (plan.budget_minutes < 0.0) throw std::invalid_argument("budget_minutes must be >= 0");
  if (plan.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (!(plan.time_model.mean_minutes > 0.0) || plan.time_model.half_width_minutes < 0.0 ||
      plan.time_model.half_width_minutes > plan.time_model.mean_minutes) {
    throw std::invalid_argument("time model needs 0 <= half_width <= mean");
  }
  for (double q : plan.q_deltas) {
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("q_delta must lie in (0, 1]");
  }
  for (int n : plan.qubits) {
    if (n < 2 || n > kMaxDenseQubits) {
      throw std::invalid_argument(fmt::format("qubit count {} outside 2..{}", n, kMaxDenseQubits));
    }
  }
}

std::uint64_t run_seed(const ExperimentPlan& plan, int k) {
  return plan.base_seed + static_cast<std::uint64_t>(k);
}

RunConfig make_run_config(const ExperimentPlan& plan, int n, AnsatzKind kind, double q_delta,
                          int k) {
  RunConfig c;
  c.n = n;
  c.decomposition = DecompositionKind::HED;
  c.ansatz = default_ansatz(kind, n);
  c.ansatz.layers = kind == AnsatzKind::GEA ? plan.gea_layers : plan.hea_layers;
  c.cost = plan.cost;
  c.mode = plan.mode;
  c.q_delta = q_delta;
  c.seed = run_seed(plan, k);
  c.epsilon_target = plan.epsilon_target;
  c.max_iterations = plan.max_iterations;
  c.optimizer = plan.optimizer;
  c.budget_minutes = plan.budget_minutes;
  return c;
}

TimeToSolution time_to_solution(std::uint64_t circuit_evaluations, const TimeModel& model) {
  const double e = static_cast<double>(circuit_evaluations);
  TimeToSolution t;
  t.minutes_low = e * (model.mean_minutes - model.half_width_minutes);
  t.minutes_mid = e * model.mean_minutes;
  t.minutes_high = e * (model.mean_minutes + model.half_width_minutes);
  t.days_low = t.minutes_low / kMinutesPerDay;
  t.days_mid = t.minutes_mid / kMinutesPerDay;
  t.days_high = t.minutes_high / kMinutesPerDay;
  return t;
}

TimeToSolution time_to_solution(const RunRecord& record, const TimeModel& model) {
  return time_to_solution(record.total_circuit_evaluations, model);
}

// ---- summary table ---------------------------------------------------------

const std::vector<std::string>& summary_columns() {
  static const std::vector<std::string> cols = {
      "n",         "ansatz",    "q_delta",         "cost",
      "mode",      "seeds",     "converged",       "failed",
      "status",    "threshold", "kappa",           "median_iterations",
      "median_circuit_evaluations",                "median_days_mid",
      "median_final_cost",                         "median_trace_distance"};
  return cols;
}

std::string summary_header() {
  std::string out;
  for (const auto& c : summary_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

std::string to_csv_row(const CellSummary& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.n, r.ansatz, r.q_delta,
                     r.cost, r.mode, r.seeds, r.converged, r.failed, r.status, r.threshold, r.kappa,
                     fmt_opt(r.median_iterations), fmt_opt(r.median_circuit_evaluations),
                     fmt_opt(r.median_days_mid), r.median_final_cost, r.median_trace_distance);
}

CellSummary parse_summary_row(const std::string& line) {
  const auto f = split(line, ',');
  if (f.size() != summary_columns().size()) {
    throw std::invalid_argument(fmt::format("summary row has {} fields, expected {}", f.size(),
                                            summary_columns().size()));
  }
  CellSummary r;
  r.n = parse_int(f[0]);
  r.ansatz = f[1];
  r.q_delta = parse_double(f[2]);
  r.cost = f[3];
  r.mode = f[4];
  r.seeds = parse_int(f[5]);
  r.converged = parse_int(f[6]);
  r.failed = parse_int(f[7]);
  r.status = f[8];
  r.threshold = parse_double(f[9]);
  r.kappa = parse_double(f[10]);
  r.median_iterations = parse_opt(f[11]);
  r.median_circuit_evaluations = parse_opt(f[12]);
  r.median_days_mid = parse_opt(f[13]);
  r.median_final_cost = parse_double(f[14]);
  r.median_trace_distance = parse_double(f[15]);
  return r;
}

std::string write_summary_csv(const std::vector<CellSummary>& rows) {
  std::string out = summary_header() + "\n";
  for (const auto& r : rows) out += to_csv_row(r) + "\n";
  return out;
}

std::vector<CellSummary> read_summary_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != summary_header()) {
    throw std::invalid_argument("summary CSV header mismatch");
  }
  std::vector<CellSummary> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) rows.push_back(parse_summary_row(lines[i]));
  return rows;
}

double censored_median(const std::vector<std::optional<double>>& values) {
  std::vector<double> v;
  for (const auto& x : values) v.push_back(x ? *x : std::numeric_limits<double>::infinity());
  return median(std::move(v));
}

CellSummary summarize_cell(const std::vector<RunRecord>& runs, const TimeModel& model) {
  if (runs.empty()) throw std::invalid_argument("cell has no runs");
  const RunConfig& c = runs.front().config;
  CellSummary s;
  s.n = c.n;
  s.ansatz = to_string(c.ansatz.kind);
  s.q_delta = c.q_delta;
  s.cost = to_string(c.cost);
  s.mode = mode_name(c.mode);
  s.seeds = static_cast<int>(runs.size());
  s.threshold = runs.front().threshold;
  s.kappa = runs.front().kappa;

  std::vector<double> iters, evals, days, costs, dists;
  for (const auto& r : runs) {
    if (r.status == RunStatus::Failed) ++s.failed;
    if (r.converged && r.iterations_to_threshold) {
      ++s.converged;
      iters.push_back(*r.iterations_to_threshold);
      evals.push_back(static_cast<double>(r.total_circuit_evaluations));
      days.push_back(time_to_solution(r, model).days_mid);
    }
    costs.push_back(r.final_cost);
    dists.push_back(r.final_trace_distance);
  }
  s.status = s.converged == s.seeds ? "converged" : s.converged == 0 ? "timed_out" : "partial";
  if (!iters.empty()) {
    s.median_iterations = median(iters);
    s.median_circuit_evaluations = median(evals);
    s.median_days_mid = median(days);
  }
  s.median_final_cost = median(costs);
  s.median_trace_distance = median(dists);
  return s;
}

// ---- run logs ----------------------------------------------------------------

std::string run_log_jsonl(const RunRecord& r) {
  std::string out;
  for (const auto& it : r.iterations) {
    nlohmann::json j = {{"type", "iteration"},
                        {"iteration", it.iteration},
                        {"cost", it.cost},
                        {"trace_distance", it.trace_distance},
                        {"circuit_evaluations", it.circuit_evaluations},
                        {"theta", it.theta}};
    out += j.dump() + "\n";
  }
  const auto& c = r.config;
  const auto tts = time_to_solution(r);
  nlohmann::json fin = {{"type", "final"},
                        {"n", c.n},
                        {"decomposition", to_string(c.decomposition)},
                        {"ansatz", to_string(c.ansatz.kind)},
                        {"layers", c.ansatz.layers},
                        {"cost", to_string(c.cost)},
                        {"mode", mode_name(c.mode)},
                        {"shots", c.mode.shots},
                        {"q_delta", c.q_delta},
                        {"seed", c.seed},
                        {"optimizer", to_string(c.optimizer.kind)},
                        {"step", c.optimizer.step},
                        {"epsilon_target", c.epsilon_target},
                        {"max_iterations", c.max_iterations},
                        {"kappa", r.kappa},
                        {"threshold", r.threshold},
                        {"status", to_string(r.status)},
                        {"converged", r.converged},
                        {"iterations_to_threshold", nullptr},
                        {"final_cost", r.final_cost},
                        {"final_trace_distance", r.final_trace_distance},
                        {"final_theta", r.final_theta},
                        {"total_circuit_evaluations", r.total_circuit_evaluations},
                        {"minutes_low", tts.minutes_low},
                        {"minutes_mid", tts.minutes_mid},
                        {"minutes_high", tts.minutes_high},
                        {"wall_seconds", r.wall_seconds},
                        {"error", r.error}};
  if (r.iterations_to_threshold) fin["iterations_to_threshold"] = *r.iterations_to_threshold;
  out += fin.dump() + "\n";
  return out;
}

// ---- plan execution ----------------------------------------------------------

ReportBundle run_plan(const ExperimentPlan& plan, const std::filesystem::path& out_dir) {
  validate(plan);
  std::filesystem::create_directories(out_dir / "runs");
  std::filesystem::create_directories(out_dir / "plots");

  struct Cell {
    int n;
    AnsatzKind kind;
    double q_delta;
  };
  std::vector<Cell> cells;
  for (int n : plan.qubits)
    for (AnsatzKind kind : plan.ansatz)
      for (double q : plan.q_deltas) cells.push_back({n, kind, q});

  std::vector<RunConfig> configs;
  for (const auto& cell : cells)
    for (int k = 0; k < plan.seeds; ++k)
      configs.push_back(make_run_config(plan, cell.n, cell.kind, cell.q_delta, k));

  ReportBundle bundle;
  bundle.runs.resize(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        bundle.runs[i] = optimize(configs[i]);
      } catch (const std::exception& e) {
        RunRecord failed;
        failed.config = configs[i];
        failed.status = RunStatus::Failed;
        failed.error = e.what();
        bundle.runs[i] = std::move(failed);
      }
    }
  };
  const int jobs = std::min<int>(plan.jobs, static_cast<int>(configs.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  for (const auto& r : bundle.runs) {
    const auto path = out_dir / "runs" / (run_stem(r.config) + ".jsonl");
    write_file(path, run_log_jsonl(r));
    bundle.run_files.push_back(path);
  }

  const auto per_cell = static_cast<std::size_t>(plan.seeds);
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    std::vector<RunRecord> runs(bundle.runs.begin() + ci * per_cell,
                                bundle.runs.begin() + (ci + 1) * per_cell);
    bundle.summary.push_back(summarize_cell(runs, plan.time_model));
  }
  bundle.summary_file = out_dir / "summary.csv";
  write_file(bundle.summary_file, write_summary_csv(bundle.summary));

  // Convergence trajectories, one plot per (n, q_delta).
  for (int n : plan.qubits) {
    for (double q : plan.q_deltas) {
      PlotSpec spec;
      spec.title = fmt::format("Cost vs iteration, n = {}, q_delta = {}", n, q);
      spec.x_label = "iteration";
      spec.y_label = "cost";
      spec.log_y = true;
      double threshold = 0.0;
      int max_it = 0;
      for (const auto& r : bundle.runs) {
        if (r.config.n != n || r.config.q_delta != q) continue;
        PlotSeries s;
        s.label = fmt::format("{} seed {}", to_string(r.config.ansatz.kind), r.config.seed);
        s.markers = false;
        for (const auto& it : r.iterations) {
          s.x.push_back(it.iteration);
          s.y.push_back(it.cost);
          max_it = std::max(max_it, it.iteration);
        }
        threshold = r.threshold;
        spec.series.push_back(std::move(s));
      }
      if (threshold > 0.0) {
        spec.series.push_back({"threshold", {0.0, double(max_it)}, {threshold, threshold}, true, false});
      }
      bundle.plot_files.push_back(
          write_plot(out_dir / "plots" / fmt::format("convergence_n{}_q{}.svg", n, q), spec));
    }
  }

  // Median iterations to threshold per ansatz and q_delta.
  PlotSpec iters;
  iters.title = "Median iterations to threshold";
  iters.x_label = "qubits";
  iters.y_label = "iterations";
  iters.log_y = true;
  for (AnsatzKind kind : plan.ansatz) {
    for (double q : plan.q_deltas) {
      PlotSeries s;
      s.label = fmt::format("{} q={}", to_string(kind), q);
      for (const auto& row : bundle.summary) {
        if (row.ansatz != to_string(kind) || row.q_delta != q || !row.median_iterations) continue;
        s.x.push_back(row.n);
        s.y.push_back(*row.median_iterations);
      }
      iters.series.push_back(std::move(s));
    }
  }
  bundle.plot_files.push_back(write_plot(out_dir / "plots" / "iterations_vs_qubits.svg", iters));
  return bundle;
}

// ---- scaling -------------------------------------------------------------------

std::vector<ScalingRow> scaling_table(int n_min, int n_max) {
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("scaling range needs 2 <= n_min <= n_max");
  std::vector<ScalingRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    ScalingRow r;
    r.n = n;
    const auto hed = decomposition_stats(DecompositionKind::HED, n);
    r.hed_terms = static_cast<int>(hed.term_count);
    r.hed_l2_gates = static_cast<int>(l2_circuit(n).size());
    r.hed_max_gates = static_cast<int>(hed.max_circuit_gates);
    if (n <= 6) {
      const auto pauli = decomposition_stats(DecompositionKind::Pauli, n);
      r.pauli_terms = static_cast<int>(pauli.term_count);
      r.pauli_max_gates = static_cast<int>(pauli.max_circuit_gates);
    }
    if (n <= kMaxDenseQubits) r.kappa = condition_number(n);
    r.gea_parameters = static_cast<int>(default_ansatz(AnsatzKind::GEA, n).parameter_count());
    r.hea_parameters = static_cast<int>(default_ansatz(AnsatzKind::HEA, n).parameter_count());
    rows.push_back(r);
  }
  return rows;
}

std::string write_scaling_csv(const std::vector<ScalingRow>& rows) {
  std::string out =
      "n,hed_terms,hed_l2_gates,hed_max_gates,pauli_terms,pauli_max_gates,kappa,gea_parameters,hea_parameters\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.n, r.hed_terms, r.hed_l2_gates, r.hed_max_gates,
                       r.pauli_terms ? std::to_string(*r.pauli_terms) : "",
                       r.pauli_max_gates ? std::to_string(*r.pauli_max_gates) : "",
                       r.kappa ? fmt::format("{}", *r.kappa) : "", r.gea_parameters,
                       r.hea_parameters);
  }
  return out;
}

std::vector<std::filesystem::path> scaling_report(const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir / "plots");
  const auto rows = scaling_table();
  std::vector<std::filesystem::path> files;
  files.push_back(out_dir / "scaling.csv");
  write_file(files.back(), write_scaling_csv(rows));

  PlotSeries hed_terms{"HED", {}, {}};
  PlotSeries pauli_terms{"Pauli", {}, {}};
  PlotSeries hed_l2{"HED L2 (n^2 - 1)", {}, {}};
  PlotSeries hed_gates{"HED max", {}, {}};
  PlotSeries pauli_gates{"Pauli", {}, {}};
  PlotSeries kappa{"kappa", {}, {}};
  PlotSeries gea{"GEA", {}, {}};
  PlotSeries hea{"HEA", {}, {}};
  for (const auto& r : rows) {
    hed_terms.x.push_back(r.n);
    hed_terms.y.push_back(r.hed_terms);
    hed_l2.x.push_back(r.n);
    hed_l2.y.push_back(r.hed_l2_gates);
    hed_gates.x.push_back(r.n);
    hed_gates.y.push_back(r.hed_max_gates);
    if (r.pauli_terms) {
      pauli_terms.x.push_back(r.n);
      pauli_terms.y.push_back(*r.pauli_terms);
      pauli_gates.x.push_back(r.n);
      pauli_gates.y.push_back(*r.pauli_max_gates);
    }
    if (r.kappa) {
      kappa.x.push_back(r.n);
      kappa.y.push_back(*r.kappa);
    }
    gea.x.push_back(r.n);
    gea.y.push_back(r.gea_parameters);
    hea.x.push_back(r.n);
    hea.y.push_back(r.hea_parameters);
  }
  const auto dir = out_dir / "plots";
  files.push_back(write_plot(dir / "terms_vs_qubits.svg",
                             {"Decomposition terms", "qubits", "terms", true, {hed_terms, pauli_terms}}));
  files.push_back(write_plot(dir / "max_gates_vs_qubits.svg",
                             {"Gates in the largest term circuit", "qubits", "gates", false,
                              {hed_l2, hed_gates, pauli_gates}}));
  files.push_back(write_plot(dir / "kappa_vs_qubits.svg",
                             {"Condition number", "qubits", "kappa", true, {kappa}}));
  files.push_back(write_plot(dir / "parameters_vs_qubits.svg",
                             {"Ansatz parameters", "qubits", "parameters", false, {gea, hea}}));
  return files;
}

// ---- metrics -------------------------------------------------------------------

std::optional<LinearFit> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / k;
  const double my = sy / k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.points = static_cast<int>(x.size());
  return f;
}

std::vector<MetricRow> metrics_from_summary(const std::vector<CellSummary>& summary,
                                            const TimeModel& model) {
  std::map<std::pair<std::string, double>, std::vector<const CellSummary*>> groups;
  for (const auto& row : summary) groups[{row.ansatz, row.q_delta}].push_back(&row);

  std::vector<MetricRow> out;
  for (const auto& [key, rows] : groups) {
    std::vector<double> xs, log_iters, log_evals;
    for (const auto* r : rows) {
      if (!r->median_circuit_evaluations || !r->median_iterations) continue;
      if (*r->median_circuit_evaluations <= 0.0) continue;
      xs.push_back(r->n);
      log_iters.push_back(std::log10(std::max(*r->median_iterations, 1.0)));
      log_evals.push_back(std::log10(*r->median_circuit_evaluations));
    }
    const auto fit_iters = fit_line(xs, log_iters);
    const auto fit_evals = fit_line(xs, log_evals);
    for (const auto* r : rows) {
      MetricRow m;
      m.n = r->n;
      m.ansatz = key.first;
      m.q_delta = key.second;
      if (r->median_circuit_evaluations && r->median_iterations) {
        m.iterations = *r->median_iterations;
        m.circuit_evaluations = *r->median_circuit_evaluations;
      } else if (fit_iters && fit_evals) {
        m.iterations = std::pow(10.0, fit_iters->slope * r->n + fit_iters->intercept);
        m.circuit_evaluations = std::pow(10.0, fit_evals->slope * r->n + fit_evals->intercept);
        m.extrapolated = true;
      } else {
        continue;
      }
      const double mean = model.mean_minutes;
      const double hw = model.half_width_minutes;
      m.days_low = m.circuit_evaluations * (mean - hw) / kMinutesPerDay;
      m.days_mid = m.circuit_evaluations * mean / kMinutesPerDay;
      m.days_high = m.circuit_evaluations * (mean + hw) / kMinutesPerDay;
      out.push_back(m);
    }
  }
  std::sort(out.begin(), out.end(), [](const MetricRow& a, const MetricRow& b) {
    return std::tie(a.ansatz, a.q_delta, a.n) < std::tie(b.ansatz, b.q_delta, b.n);
  });
  return out;
}

std::string write_metrics_csv(const std::vector<MetricRow>& rows) {
  std::string out =
      "n,ansatz,q_delta,iterations,circuit_evaluations,days_low,days_mid,days_high,kind\n";
  for (const auto& m : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", m.n, m.ansatz, m.q_delta, m.iterations,
                       m.circuit_evaluations, m.days_low, m.days_mid, m.days_high,
                       m.extrapolated ? "extrapolated" : "simulated");
  }
  return out;
}

std::vector<std::filesystem::path> report(const std::filesystem::path& out_dir,
                                          const TimeModel& model) {
  const auto summary = read_summary_csv(read_file(out_dir / "summary.csv"));
  const auto metrics = metrics_from_summary(summary, model);
  std::filesystem::create_directories(out_dir / "plots");
  std::vector<std::filesystem::path> files;
  files.push_back(out_dir / "metrics.csv");
  write_file(files.back(), write_metrics_csv(metrics));

  struct Panel {
    const char* file;
    const char* title;
    const char* y_label;
    double MetricRow::*field;
  };
  const Panel panels[] = {
      {"metrics_iterations.svg", "Iterations to threshold", "iterations", &MetricRow::iterations},
      {"metrics_circuits.svg", "Circuit evaluations to threshold", "circuit evaluations",
       &MetricRow::circuit_evaluations},
      {"metrics_days.svg", "Estimated days at 1 min per circuit", "days", &MetricRow::days_mid},
  };
  for (const auto& panel : panels) {
    PlotSpec spec{panel.title, "qubits", panel.y_label, true, {}};
    std::map<std::pair<std::string, double>, std::pair<PlotSeries, PlotSeries>> by_group;
    for (const auto& m : metrics) {
      auto& [sim, ext] = by_group[{m.ansatz, m.q_delta}];
      sim.label = fmt::format("{} q={}", m.ansatz, m.q_delta);
      ext.label = sim.label + " (extrapolated)";
      ext.dashed = true;
      auto& s = m.extrapolated ? ext : sim;
      s.x.push_back(m.n);
      s.y.push_back(m.*panel.field);
    }
    for (auto& [key, pair] : by_group) {
      if (!pair.first.x.empty()) spec.series.push_back(pair.first);
      if (!pair.second.x.empty()) spec.series.push_back(pair.second);
    }
    files.push_back(write_plot(out_dir / "plots" / panel.file, spec));
  }
  return files;
}

}  // namespace vqls
