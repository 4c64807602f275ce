#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ordreg/synthetic.hpp"
#include "ordreg/types.hpp"

namespace ordreg::bench {

/// Supervision budget: labels cost `cost_ratio` comparisons each and
/// cost_ratio * labels + comparisons <= total.
struct BudgetPlan {
  double cost_ratio = 1.0;
  double total = 0.0;
  std::size_t labels = 0;
  std::size_t comparisons = 0;
};

/// Spend the residual budget on comparisons: n = C - c*m.
BudgetPlan allocate_budget(double cost_ratio, double total, std::size_t labels);

struct ResultRecord {
  std::string experiment;
  std::string method;
  std::size_t m = 0;        // label budget for this method
  std::size_t n = 0;        // ordinal budget (ranked samples or comparisons)
  double cost_ratio = 1.0;
  std::string axis;         // sweep axis, empty for plain runs
  double axis_value = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double mse = 0.0;
  double wall_ms = 0.0;     // measured; excluded from canonical output
};

/// Experiment description; parsed from a key = value text file (# comments).
/// See docs/config keys in the README.
struct ExperimentConfig {
  std::string id = "experiment";
  std::string generator = "nonparam";  // nonparam | linear
  std::vector<std::string> methods;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::size_t train_size = 1000;
  std::size_t test_size = 1000;

  // Label-axis grid; ignored when a total budget is set.
  std::vector<std::size_t> m_grid;

  // Budget-driven mode: effective total = budget, or budget_labels * c.
  double cost_ratio = 1.0;
  double budget = 0.0;
  double budget_labels = 0.0;
  std::size_t clr_labels = 10;  // fixed label count for CLR in budget mode

  // Ordinal supervision.
  std::string ranking = "perfect";  // perfect | noisy-values | ranksvm | borda | knn-borda
  double ranking_sigma = 0.0;
  std::size_t comparisons = 0;
  std::size_t knn_borda_k = 25;

  // Comparison oracle.
  std::string oracle = "noisy-value";  // flip | noisy-value
  double oracle_lambda = 0.25;
  double oracle_sigma = 0.5;

  // Generators.
  double label_sigma = 0.5;
  std::size_t nonparam_d = 8;
  double nonparam_p = -1.0;
  std::size_t linear_d = 50;

  // Method hyperparameters.
  double ranksvm_bandwidth = 1.0;
  double ranksvm_reg = 1e-3;
  std::size_t ranksvm_epochs = 50;
  std::size_t active_rounds = 6;
  double bound_M = 1e6;

  void validate() const;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(std::istream& in, const std::string& name);

/// Run every (grid cell, trial) combination: derive the cell seed, generate
/// data, acquire supervision within the plan, fit each method, score test
/// MSE against the noiseless truth. Trial seeds mix (seed, cell, trial) so
/// extending the grid never shifts existing cells.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);

/// The derived config a sweep runs for one axis value: the axis field is
/// substituted, the id gains an "/axis=value" suffix, and the seed mixes in
/// the value so inserting values never shifts the others.
ExperimentConfig apply_sweep_axis(const ExperimentConfig& config, const std::string& axis,
                                  double value);

/// One run_experiment per axis value.
std::vector<ResultRecord> sweep(const std::string& axis,
                                const std::vector<double>& values,
                                const ExperimentConfig& config);

void write_records_jsonl(std::ostream& os, const std::vector<ResultRecord>& records,
                         bool include_timing = false);

struct SummaryRow {
  std::string axis;
  double axis_value = 0.0;
  std::size_t m = 0;
  std::string method;
  std::size_t trials = 0;
  double mean_mse = 0.0;
  double std_mse = 0.0;     // sample standard deviation
  double stderr_mse = 0.0;  // std / sqrt(trials)
};

/// Aggregate per (axis value, m, method); rows ordered by first appearance.
std::vector<SummaryRow> summarize(const std::vector<ResultRecord>& records);

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

}  // namespace ordreg::bench
