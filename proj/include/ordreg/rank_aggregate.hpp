#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ordreg/metrics.hpp"
#include "ordreg/rng.hpp"
#include "ordreg/types.hpp"

namespace ordreg {

enum class ScorerKind { borda, knn_borda, ranksvm };

/// Per-sample score function induced from pairwise comparisons. For the
/// kernel scorer the expansion (support rows, coefficients, bandwidth) is
/// kept so new points can be scored too.
struct Scorer {
  ScorerKind kind = ScorerKind::borda;
  std::vector<double> scores;  // one per training sample

  // ranksvm expansion
  std::vector<double> support;  // flat n x d
  std::vector<double> beta;
  std::size_t dim = 0;
  double bandwidth = 1.0;

  /// Kernel-expansion score of an arbitrary point (ranksvm only).
  double evaluate(std::span<const double> x) const;
};

struct ComparisonOracleConfig {
  enum class Model { flip, noisy_value };
  Model model = Model::noisy_value;
  double lambda = 0.25;      // flip margin, in (0, 1/2]: error rate is 1/2 - lambda
  double sigma_prime = 0.5;  // value-noise std

  static ComparisonOracleConfig flip(double lambda) {
    if (!(lambda > 0) || lambda > 0.5)
      throw ParameterError("ComparisonOracleConfig: lambda must be in (0, 1/2]");
    return {Model::flip, lambda, 0.0};
  }
  static ComparisonOracleConfig noisy_value(double sigma) {
    if (sigma < 0) throw ParameterError("ComparisonOracleConfig: sigma must be >= 0");
    return {Model::noisy_value, 0.25, sigma};
  }
};

/// One judgment between two true values: the flip model emits the true sign
/// and flips it with probability 1/2 - lambda; the noisy-value model
/// compares values perturbed by fresh N(0, sigma'^2) noise.
int simulate_judgment(double truth_i, double truth_j, const ComparisonOracleConfig& cfg,
                      Rng& rng);

/// Answer the requested pairs from noisy views of the true values.
ComparisonSet simulate_comparisons(std::span<const double> truth,
                                   std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                   const ComparisonOracleConfig& cfg, Rng& rng);

/// Wins minus losses per item across all judgments.
Scorer borda_scores(const ComparisonSet& comparisons, std::size_t n);

/// Smooth Borda scores over the feature space: each sample's score is the
/// mean base score of its k nearest rows, itself included.
Scorer knn_borda_scores(const Scorer& base, const SampleSet& features, std::size_t k);

/// Kernel rankSVM scored by stochastic subgradient on the pairwise hinge
/// loss, RBF kernel exp(-||x - x'||^2 / bandwidth).
Scorer fit_ranksvm_scorer(const SampleSet& features, const ComparisonSet& comparisons,
                          double bandwidth, double reg, std::size_t epochs, Rng& rng,
                          double step0 = 1.0);

/// Ascending ranking of the scores (lowest score at position 0).
Ranking scores_to_ranking(const Scorer& scorer);

/// `count` unordered index pairs drawn uniformly without replacement from
/// the n(n-1)/2 possibilities.
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t n,
                                                              std::size_t count,
                                                              Rng& rng);

}  // namespace ordreg
