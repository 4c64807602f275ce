#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordreg/baselines.hpp"
#include "ordreg/oracles.hpp"
#include "ordreg/rng.hpp"
#include "ordreg/types.hpp"

namespace ordreg {

/// Difference vectors X_{2k} - X_{2k+1} over consecutive disjoint pairs,
/// with the (i, j) provenance kept so oracle queries route to the right
/// sample pair.
struct PairwisePool {
  std::vector<double> diffs;  // flat P x d
  std::vector<std::pair<std::size_t, std::size_t>> provenance;
  std::size_t dim = 0;

  std::size_t size() const { return provenance.size(); }
  std::span<const double> row(std::size_t k) const { return {diffs.data() + k * dim, dim}; }
};

PairwisePool build_pairwise_pool(const SampleSet& universe);

struct ClassifierBudgetReport {
  std::size_t comparisons_used = 0;
  double final_band = 0.0;  // active only
};

struct DirectionFit {
  std::vector<double> direction;  // unit vector
  ClassifierBudgetReport report;
};

struct PassiveDirectionOptions {
  double reg = 1e-4;
  std::size_t iterations = 4000;
  double step0 = 10.0;
};

/// Query `budget` randomly chosen pool rows, then minimize the regularized
/// hinge loss with deterministic full-gradient descent and normalize.
DirectionFit fit_passive_direction(const PairwisePool& pool, ComparisonOracle& oracle,
                                   std::size_t budget,
                                   const PassiveDirectionOptions& options, Rng& rng);

struct ActiveDirectionOptions {
  std::size_t rounds = 6;
  double warm_fraction = 0.1;    // share of the budget spent on the warm start
  double band_quantile = 0.5;    // b_1 = this quantile of |<v0, u>| over the pool
  double reg = 1e-4;
  double proximal = 0.0;         // optional extra pull toward the previous direction
  std::size_t iterations = 1000; // per refit; steps shrink with the band
  double step0 = 10.0;
};

/// Margin-based localization: each round queries pool rows inside a band
/// |<v, u>| <= b around the current hyperplane, refits the hinge loss on all
/// judgments collected so far (warm-started at the previous direction), and
/// halves the band.
DirectionFit fit_active_direction(const PairwisePool& pool, ComparisonOracle& oracle,
                                  std::size_t budget,
                                  const ActiveDirectionOptions& options, Rng& rng);

/// Ratio-of-sums scale estimate over the labeled rows of `samples`:
/// sum <v, X_i> y_i / sum <v, X_i>^2.
double estimate_scale(std::span<const double> direction, const SampleSet& samples);

enum class DirectionMode { passive, active };

struct ClrConfig {
  std::size_t comparison_budget = 0;
  std::size_t label_budget = 0;
  DirectionMode mode = DirectionMode::passive;
  bool augment = false;
  PassiveDirectionOptions passive;
  ActiveDirectionOptions active;
  LinearSvrOptions svr;  // for the augmented variant
};

/// Linear predictor from comparisons plus a few labels.
struct CLRModel {
  std::vector<double> direction;  // unit d-vector
  double scale = 0.0;
  // Weights on the raw augmented input (x; <direction, x>), plus intercept;
  // the unit-variance rescaling of the extra feature is folded in.
  std::optional<std::vector<double>> augmented_weights;
  double augmented_intercept = 0.0;
  ClassifierBudgetReport report;

  double predict(std::span<const double> query) const;

  void save(const std::string& path) const;
  static CLRModel load(const std::string& path);
};

/// End to end: pairwise pool from the universe, direction from the
/// comparison oracle, scale from labeled queries, optional feature-augmented
/// linear SVR refit.
CLRModel fit_clr(const SampleSet& universe, ComparisonOracle& comparison_oracle,
                 LabelOracle& label_oracle, const ClrConfig& config, Rng& rng);

double predict_clr(const CLRModel& model, std::span<const double> query);

}  // namespace ordreg
