#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ordreg/metrics.hpp"
#include "ordreg/rank_aggregate.hpp"
#include "ordreg/rng.hpp"

using namespace ordreg;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

}  // namespace

TEST_CASE("simulate_comparisons noiseless limits") {
  Rng rng(1);
  const std::vector<double> truth{0.3, -1.0, 2.0, 0.9};
  const auto pairs = all_pairs(truth.size());

  for (const auto& cfg : {ComparisonOracleConfig::flip(0.5),
                          ComparisonOracleConfig::noisy_value(0.0)}) {
    const auto comps = simulate_comparisons(truth, pairs, cfg, rng);
    for (const auto& c : comps)
      CHECK(c.z == (truth[c.i] > truth[c.j] ? 1 : -1));
  }
}

TEST_CASE("simulate_comparisons flip rate matches lambda (Monte Carlo)") {
  Rng rng(9);
  const std::vector<double> truth{1.0, 0.0};
  const std::vector<std::pair<std::size_t, std::size_t>> pair{{0, 1}};
  const auto cfg = ComparisonOracleConfig::flip(0.1);
  int errors = 0;
  const int draws = 100000;
  for (int rep = 0; rep < draws; ++rep) {
    const auto comps = simulate_comparisons(truth, pair, cfg, rng);
    if (comps[0].z != 1) ++errors;
  }
  CHECK(std::abs(static_cast<double>(errors) / draws - 0.4) <= 0.01);
}

TEST_CASE("simulate_comparisons validates input") {
  Rng rng(2);
  const std::vector<double> truth{1.0, 2.0};
  const std::vector<std::pair<std::size_t, std::size_t>> self{{1, 1}};
  CHECK_THROWS_AS(
      simulate_comparisons(truth, self, ComparisonOracleConfig::flip(0.5), rng),
      InvalidValueError);
  CHECK_THROWS_AS(ComparisonOracleConfig::flip(0.0), ParameterError);
  CHECK_THROWS_AS(ComparisonOracleConfig::flip(0.7), ParameterError);
  CHECK_THROWS_AS(ComparisonOracleConfig::noisy_value(-1.0), ParameterError);
}

TEST_CASE("borda_scores spec examples") {
  ComparisonSet consistent;  // item order 2 > 1 > 0
  consistent.add(0, 1, -1);
  consistent.add(0, 2, -1);
  consistent.add(1, 2, -1);
  CHECK(borda_scores(consistent, 3).scores == std::vector<double>{-2, 0, 2});

  CHECK(borda_scores(ComparisonSet{}, 4).scores == std::vector<double>(4, 0.0));

  ComparisonSet cycle;  // 0 > 1, 1 > 2, 2 > 0 with a fourth unmentioned item
  cycle.add(0, 1, 1);
  cycle.add(1, 2, 1);
  cycle.add(2, 0, 1);
  CHECK(borda_scores(cycle, 4).scores == std::vector<double>(4, 0.0));
}

TEST_CASE("borda_scores sums to zero and ignores contradicting pairs") {
  Rng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform_index(10));
    ComparisonSet comps;
    for (int k = 0; k < 30; ++k) {
      const std::size_t i = static_cast<std::size_t>(rng.uniform_index(n));
      std::size_t j = static_cast<std::size_t>(rng.uniform_index(n - 1));
      if (j >= i) ++j;
      comps.add(i, j, rng.uniform() < 0.5 ? 1 : -1);
    }
    const auto s = borda_scores(comps, n);
    CHECK(std::accumulate(s.scores.begin(), s.scores.end(), 0.0) ==
          doctest::Approx(0.0));

    ComparisonSet doubled;
    for (const auto& c : comps) doubled.add(c.i, c.j, c.z);
    const auto& last = comps[comps.size() - 1];
    doubled.add(last.i, last.j, -last.z);  // judgment plus its exact reverse
    auto base = s.scores;
    base[last.i] -= last.z;
    base[last.j] += last.z;
    CHECK(borda_scores(doubled, n).scores == base);
  }
}

TEST_CASE("complete noiseless tournaments recover the exact ranking, n <= 6") {
  for (std::size_t n = 2; n <= 6; ++n) {
    std::vector<double> values(n);
    std::iota(values.begin(), values.end(), 0.0);
    std::sort(values.begin(), values.end());
    do {
      ComparisonSet comps;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          comps.add(i, j, values[i] > values[j] ? 1 : -1);
      const auto ranking = scores_to_ranking(borda_scores(comps, n));
      CHECK(ranking == ranking_from_values(values));
    } while (std::next_permutation(values.begin(), values.end()));
  }
}

TEST_CASE("knn_borda_scores spec examples") {
  // Six points on a line with monotone base scores.
  SampleSet features(6, 1, {0, 1, 2, 3, 4, 5});
  Scorer base;
  base.kind = ScorerKind::borda;
  base.scores = {-5, -3, -1, 1, 3, 5};

  CHECK(knn_borda_scores(base, features, 1).scores == base.scores);

  const auto global = knn_borda_scores(base, features, 6);
  for (double s : global.scores) CHECK(s == doctest::Approx(0.0));

  const auto k3 = knn_borda_scores(base, features, 3);
  // Brute-force oracle: nearest three rows (self included, lower index wins
  // distance ties).
  CHECK(k3.scores[0] == doctest::Approx((-5 - 3 - 1) / 3.0));
  CHECK(k3.scores[1] == doctest::Approx((-5 - 3 - 1) / 3.0));
  CHECK(k3.scores[2] == doctest::Approx((-3 - 1 + 1) / 3.0));
  CHECK(k3.scores[3] == doctest::Approx((-1 + 1 + 3) / 3.0));
  CHECK(k3.scores[4] == doctest::Approx((1 + 3 + 5) / 3.0));
  CHECK(k3.scores[5] == doctest::Approx((1 + 3 + 5) / 3.0));

  CHECK_THROWS_AS(knn_borda_scores(base, features, 7), ParameterError);
  Scorer wrong = base;
  wrong.kind = ScorerKind::ranksvm;
  CHECK_THROWS_AS(knn_borda_scores(wrong, features, 1), ParameterError);
}

TEST_CASE("ranksvm separates a single judged pair") {
  SampleSet features(2, 1, {0.0, 10.0});
  ComparisonSet comps;
  comps.add(0, 1, 1);
  Rng rng(4);
  const auto scorer = fit_ranksvm_scorer(features, comps, 1.0, 1e-3, 10, rng);
  CHECK(scorer.scores[0] > scorer.scores[1]);
  // The kernel expansion reproduces the training scores.
  CHECK(scorer.evaluate(features.row(0)) == doctest::Approx(scorer.scores[0]));
  CHECK(scorer.evaluate(features.row(1)) == doctest::Approx(scorer.scores[1]));
}

TEST_CASE("ranksvm learns a linear function on uniform features") {
  Rng rng(12);
  const std::size_t n = 200, d = 8;
  SampleSet features(n, d);
  std::vector<double> truth(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (double& v : features.row(i)) {
      v = rng.uniform();
      acc += v;
    }
    truth[i] = acc;
  }
  const auto pairs = sample_pairs(n, 2000, rng);
  const auto comps =
      simulate_comparisons(truth, pairs, ComparisonOracleConfig::noisy_value(0.0), rng);
  const auto scorer = fit_ranksvm_scorer(features, comps, 1.0, 1e-3, 50, rng);
  const double nu =
      kendall_tau(scores_to_ranking(scorer), ranking_from_values(truth)).nu;
  CHECK(nu <= 0.15);
}

TEST_CASE("ranksvm is invariant to feature doubling with bandwidth x4") {
  Rng rng(21);
  const std::size_t n = 40, d = 3;
  SampleSet a(n, d);
  std::vector<double> truth(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : a.row(i)) v = rng.uniform();
    truth[i] = a.at(i, 0);
  }
  SampleSet b(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) b.at(i, j) = 2.0 * a.at(i, j);

  const auto pairs = sample_pairs(n, 150, rng);
  const auto comps =
      simulate_comparisons(truth, pairs, ComparisonOracleConfig::noisy_value(0.0), rng);
  Rng fit1(77), fit2(77);
  const auto sa = fit_ranksvm_scorer(a, comps, 1.0, 1e-3, 20, fit1);
  const auto sb = fit_ranksvm_scorer(b, comps, 4.0, 1e-3, 20, fit2);
  CHECK(scores_to_ranking(sa) == scores_to_ranking(sb));
}

TEST_CASE("ranksvm validates input") {
  SampleSet features(2, 1, {0.0, 1.0});
  Rng rng(0);
  CHECK_THROWS_AS(fit_ranksvm_scorer(features, ComparisonSet{}, 1.0, 1e-3, 1, rng),
                  BudgetError);
  ComparisonSet comps;
  comps.add(0, 1, 1);
  CHECK_THROWS_AS(fit_ranksvm_scorer(features, comps, 0.0, 1e-3, 1, rng), ParameterError);
}

TEST_CASE("scores_to_ranking spec examples and argsort oracle") {
  Scorer s;
  s.kind = ScorerKind::borda;
  s.scores = {-2, 0, 2};
  CHECK(scores_to_ranking(s).order() == std::vector<std::size_t>{0, 1, 2});

  s.scores = {1, 1, 1, 1};
  CHECK(scores_to_ranking(s).order() == std::vector<std::size_t>{0, 1, 2, 3});

  Rng rng(14);
  for (int rep = 0; rep < 20; ++rep) {
    s.scores.assign(30, 0.0);
    for (double& v : s.scores) v = rng.normal();
    std::vector<std::size_t> expected(s.scores.size());
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    std::stable_sort(expected.begin(), expected.end(),
                     [&](std::size_t i, std::size_t j) { return s.scores[i] < s.scores[j]; });
    CHECK(scores_to_ranking(s).order() == expected);
  }
}

TEST_CASE("sample_pairs draws distinct unordered pairs") {
  Rng rng(3);
  const auto pairs = sample_pairs(20, 100, rng);
  CHECK(pairs.size() == 100);
  std::set<std::pair<std::size_t, std::size_t>> seen(pairs.begin(), pairs.end());
  CHECK(seen.size() == 100);
  for (const auto& [i, j] : pairs) CHECK(i < j);
  CHECK_THROWS_AS(sample_pairs(4, 7, rng), ParameterError);

  // Dense request covers every pair.
  const auto dense = sample_pairs(6, 15, rng);
  CHECK(std::set<std::pair<std::size_t, std::size_t>>(dense.begin(), dense.end()).size() ==
        15);
}

TEST_CASE("aggregated ranking error is non-increasing in the pair budget") {
  // Noiseless oracle, Borda aggregation; the last budget saturates the
  // 100*99/2 = 4950 available unordered pairs.
  const std::size_t n = 100;
  const std::vector<std::size_t> budgets{100, 400, 1600, 4950};
  std::vector<double> mean_nu;
  for (const std::size_t budget : budgets) {
    double acc = 0.0;
    const int seeds = 5;
    for (int seed = 0; seed < seeds; ++seed) {
      Rng rng(500 + seed);
      std::vector<double> truth(n);
      for (double& v : truth) v = rng.normal();
      const auto pairs = sample_pairs(n, budget, rng);
      const auto comps = simulate_comparisons(truth, pairs,
                                              ComparisonOracleConfig::noisy_value(0.0), rng);
      const auto ranking = scores_to_ranking(borda_scores(comps, n));
      acc += kendall_tau(ranking, ranking_from_values(truth)).nu;
    }
    mean_nu.push_back(acc / seeds);
  }
  for (std::size_t b = 1; b < mean_nu.size(); ++b) CHECK(mean_nu[b] <= mean_nu[b - 1] + 1e-12);
  CHECK(mean_nu.back() == doctest::Approx(0.0));
}
