#include "ordreg/rank_aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "ordreg/linalg.hpp"

namespace ordreg {

double Scorer::evaluate(std::span<const double> x) const {
  if (kind != ScorerKind::ranksvm)
    throw ParameterError("Scorer::evaluate: only kernel scorers score new points");
  if (x.size() != dim) throw DimensionError("Scorer::evaluate: dimension mismatch");
  const std::size_t n = beta.size();
  double s = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    if (beta[u] == 0.0) continue;
    const double d2 = squared_distance({support.data() + u * dim, dim}, x);
    s += beta[u] * std::exp(-d2 / bandwidth);
  }
  return s;
}

int simulate_judgment(double truth_i, double truth_j, const ComparisonOracleConfig& cfg,
                      Rng& rng) {
  if (cfg.model == ComparisonOracleConfig::Model::flip) {
    int z = truth_i > truth_j ? 1 : -1;
    if (rng.uniform() < 0.5 - cfg.lambda) z = -z;
    return z;
  }
  const double a = truth_i + rng.normal(0.0, cfg.sigma_prime);
  const double b = truth_j + rng.normal(0.0, cfg.sigma_prime);
  return a > b ? 1 : -1;
}

ComparisonSet simulate_comparisons(std::span<const double> truth,
                                   std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                   const ComparisonOracleConfig& cfg, Rng& rng) {
  for (double v : truth)
    if (!std::isfinite(v)) throw InvalidValueError("simulate_comparisons: non-finite truth");

  ComparisonSet out;
  for (const auto& [i, j] : pairs) {
    if (i == j) throw InvalidValueError("simulate_comparisons: i == j");
    if (i >= truth.size() || j >= truth.size())
      throw DimensionError("simulate_comparisons: pair index out of range");
    out.add(i, j, simulate_judgment(truth[i], truth[j], cfg, rng));
  }
  return out;
}

Scorer borda_scores(const ComparisonSet& comparisons, std::size_t n) {
  Scorer s;
  s.kind = ScorerKind::borda;
  s.scores.assign(n, 0.0);
  for (const auto& c : comparisons) {
    if (c.i >= n || c.j >= n) throw DimensionError("borda_scores: index out of range");
    s.scores[c.i] += c.z;
    s.scores[c.j] -= c.z;
  }
  return s;
}

Scorer knn_borda_scores(const Scorer& base, const SampleSet& features, std::size_t k) {
  if (base.kind != ScorerKind::borda)
    throw ParameterError("knn_borda_scores: base scorer must be borda");
  const std::size_t n = features.size();
  if (base.scores.size() != n)
    throw DimensionError("knn_borda_scores: scorer/feature size mismatch");
  if (k < 1 || k > n) throw ParameterError("knn_borda_scores: need 1 <= k <= n");

  Scorer s;
  s.kind = ScorerKind::knn_borda;
  s.scores.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    // Row i is at distance 0 from itself, so self-inclusion comes free from
    // the lower-index tie-break.
    const auto nn = k_nearest(features.features(), n, features.dim(), features.row(i), k);
    double acc = 0.0;
    for (std::size_t u : nn) acc += base.scores[u];
    s.scores[i] = acc / static_cast<double>(k);
  }
  return s;
}

Scorer fit_ranksvm_scorer(const SampleSet& features, const ComparisonSet& comparisons,
                          double bandwidth, double reg, std::size_t epochs, Rng& rng,
                          double step0) {
  if (comparisons.empty()) throw BudgetError("fit_ranksvm_scorer: no comparisons");
  if (!(bandwidth > 0)) throw ParameterError("fit_ranksvm_scorer: bandwidth must be > 0");
  if (!(reg > 0)) throw ParameterError("fit_ranksvm_scorer: reg must be > 0");
  const std::size_t n = features.size();
  for (const auto& c : comparisons)
    if (c.i >= n || c.j >= n)
      throw DimensionError("fit_ranksvm_scorer: comparison index out of range");

  // Gram matrix; n stays small enough (couple thousand) to hold dense.
  std::vector<double> kernel(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    kernel[a * n + a] = 1.0;
    for (std::size_t b = a + 1; b < n; ++b) {
      const double v = std::exp(-squared_distance(features.row(a), features.row(b)) / bandwidth);
      kernel[a * n + b] = v;
      kernel[b * n + a] = v;
    }
  }

  std::vector<double> beta(n, 0.0), score(n, 0.0);
  std::vector<std::size_t> sched(comparisons.size());
  std::iota(sched.begin(), sched.end(), std::size_t{0});
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(sched);
    for (std::size_t s : sched) {
      const auto& c = comparisons[s];
      const double eta = step0 / std::sqrt(static_cast<double>(++t));
      const double shrink = 1.0 - eta * reg;
      for (std::size_t u = 0; u < n; ++u) {
        beta[u] *= shrink;
        score[u] *= shrink;
      }
      if (c.z * (score[c.i] - score[c.j]) < 1.0) {
        beta[c.i] += eta * c.z;
        beta[c.j] -= eta * c.z;
        const double* ki = kernel.data() + c.i * n;
        const double* kj = kernel.data() + c.j * n;
        for (std::size_t u = 0; u < n; ++u) score[u] += eta * c.z * (ki[u] - kj[u]);
      }
    }
  }

  Scorer s;
  s.kind = ScorerKind::ranksvm;
  s.scores = std::move(score);
  s.support = features.features();
  s.beta = std::move(beta);
  s.dim = features.dim();
  s.bandwidth = bandwidth;
  return s;
}

Ranking scores_to_ranking(const Scorer& scorer) {
  for (double v : scorer.scores)
    if (!std::isfinite(v)) throw InvalidValueError("scores_to_ranking: non-finite score");
  return ranking_from_values(scorer.scores);
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t n,
                                                              std::size_t count,
                                                              Rng& rng) {
  if (n < 2) throw ParameterError("sample_pairs: need n >= 2");
  const std::size_t total = n * (n - 1) / 2;
  if (count > total) throw ParameterError("sample_pairs: count exceeds available pairs");

  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(count);
  if (count * 3 >= total) {
    // Dense request: enumerate and take a partial shuffle.
    std::vector<std::pair<std::size_t, std::size_t>> all;
    all.reserve(total);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(total - i));
      std::swap(all[i], all[j]);
      out.push_back(all[i]);
    }
  } else {
    std::unordered_set<std::uint64_t> seen;
    while (out.size() < count) {
      std::size_t i = static_cast<std::size_t>(rng.uniform_index(n));
      std::size_t j = static_cast<std::size_t>(rng.uniform_index(n - 1));
      if (j >= i) ++j;
      if (i > j) std::swap(i, j);
      const std::uint64_t key = static_cast<std::uint64_t>(i) * n + j;
      if (seen.insert(key).second) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace ordreg
