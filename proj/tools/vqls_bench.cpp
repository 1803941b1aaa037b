// vqls_bench: scaling tables, experiment plans and time-to-solution reports.
//
//   vqls_bench scaling --out results
//   vqls_bench run --qubits 3..5 --ansatz both --seeds 5 --out results
//   vqls_bench report --out results
//
// Every flag may also come from --config FILE (key=value lines); flags on
// the command line win.

#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vqls/bench.hpp"

namespace {

std::vector<int> parse_qubits(const std::string& text) {
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty qubit range " + text);
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(std::stoi(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(std::stod(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational linear-solver benchmarks for the 1D Poisson matrix"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file mirroring the flags");

  std::string qubits = "3..9";
  std::string ansatz = "both";
  std::string cost = "local";
  std::string mode = "exact";
  std::uint64_t shots = 1'000'000;
  std::string qdelta = "0.01,0.1";
  int seeds = 5;
  std::uint64_t base_seed = 0;
  double epsilon = 0.01;
  int max_iters = 2000;
  double budget_minutes = 0.0;
  std::string optimizer = "adam";
  double step = vqls::OptimizerSettings{}.step;
  int gea_layers = vqls::kDefaultGeaLayers;
  int hea_layers = vqls::kDefaultHeaLayers;
  int jobs = 1;
  std::string out = "results";

  app.add_option("--qubits", qubits, "Qubit range a..b or list a,b,c")->capture_default_str();
  app.add_option("--ansatz", ansatz, "gea, hea or both")
      ->check(CLI::IsMember({"gea", "hea", "both"}))
      ->capture_default_str();
  app.add_option("--cost", cost, "local or global")
      ->check(CLI::IsMember({"local", "global"}))
      ->capture_default_str();
  app.add_option("--mode", mode, "exact or sampled")
      ->check(CLI::IsMember({"exact", "sampled"}))
      ->capture_default_str();
  app.add_option("--shots", shots, "Shots per circuit in sampled mode")->capture_default_str();
  app.add_option("--qdelta", qdelta, "Initialization variances, comma separated")->capture_default_str();
  app.add_option("--seeds", seeds, "Seeds per cell")->capture_default_str();
  app.add_option("--base-seed", base_seed, "Seed of the first run in each cell")->capture_default_str();
  app.add_option("--epsilon", epsilon, "Target trace distance")->capture_default_str();
  app.add_option("--max-iters", max_iters, "Iteration budget per run")->capture_default_str();
  app.add_option("--budget-minutes", budget_minutes, "Modeled hardware minutes per run, 0 = off")
      ->capture_default_str();
  app.add_option("--optimizer", optimizer, "adam or spsa")
      ->check(CLI::IsMember({"adam", "spsa"}))
      ->capture_default_str();
  app.add_option("--step", step, "Adam step size")->capture_default_str();
  app.add_option("--gea-layers", gea_layers, "GEA layers")->capture_default_str();
  app.add_option("--hea-layers", hea_layers, "HEA layers")->capture_default_str();
  app.add_option("--jobs", jobs, "Concurrent runs")->capture_default_str();
  app.add_option("--out", out, "Output directory")->capture_default_str();

  auto* scaling_cmd = app.add_subcommand("scaling", "Term counts, gate counts and kappa vs qubits");
  auto* run_cmd = app.add_subcommand("run", "Execute an experiment plan");
  auto* report_cmd = app.add_subcommand("report", "Time-to-solution metrics from summary.csv");
  for (auto* sub : {scaling_cmd, run_cmd, report_cmd}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (scaling_cmd->parsed()) {
      for (const auto& f : vqls::scaling_report(out)) fmt::print("wrote {}\n", f.string());
      return 0;
    }
    if (report_cmd->parsed()) {
      for (const auto& f : vqls::report(out)) fmt::print("wrote {}\n", f.string());
      return 0;
    }

    vqls::ExperimentPlan plan;
    plan.qubits = parse_qubits(qubits);
    plan.ansatz.clear();
    if (ansatz != "hea") plan.ansatz.push_back(vqls::AnsatzKind::GEA);
    if (ansatz != "gea") plan.ansatz.push_back(vqls::AnsatzKind::HEA);
    plan.cost = cost == "global" ? vqls::CostKind::GlobalNormalized : vqls::CostKind::LocalNormalized;
    plan.mode = mode == "sampled" ? vqls::EvalMode::sampled_with(shots) : vqls::EvalMode::exact();
    plan.q_deltas = parse_doubles(qdelta);
    plan.seeds = seeds;
    plan.base_seed = base_seed;
    plan.epsilon_target = epsilon;
    plan.max_iterations = max_iters;
    plan.budget_minutes = budget_minutes;
    plan.optimizer.kind = optimizer == "spsa" ? vqls::OptimizerKind::SPSA : vqls::OptimizerKind::Adam;
    plan.optimizer.step = step;
    plan.gea_layers = gea_layers;
    plan.hea_layers = hea_layers;
    plan.jobs = jobs;

    const auto bundle = vqls::run_plan(plan, out);
    for (const auto& row : bundle.summary) {
      fmt::print("n={} {} q_delta={}: {}/{} converged ({}), median iterations {}\n", row.n,
                 row.ansatz, row.q_delta, row.converged, row.seeds, row.status,
                 row.median_iterations ? fmt::format("{}", *row.median_iterations) : "-");
    }
    fmt::print("wrote {}\n", bundle.summary_file.string());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return 0;
}
