#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ordreg/baselines.hpp"
#include "ordreg/metrics.hpp"
#include "ordreg/r2.hpp"
#include "ordreg/rng.hpp"
#include "ordreg/synthetic.hpp"

using namespace ordreg;

namespace {

SampleSet line_features(std::size_t n) {
  SampleSet s(n, 1);
  for (std::size_t i = 0; i < n; ++i) s.at(i, 0) = static_cast<double>(i);
  return s;
}

std::vector<std::size_t> knn_oracle(const SampleSet& s, std::span<const double> q,
                                    std::size_t k) {
  std::vector<std::pair<double, std::size_t>> d;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.dim(); ++j)
      acc += (s.at(i, j) - q[j]) * (s.at(i, j) - q[j]);
    d.emplace_back(acc, i);
  }
  std::sort(d.begin(), d.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(d[i].second);
  return out;
}

}  // namespace

TEST_CASE("fit_r2 traces the imputation steps on a noiseless chain") {
  const auto universe = line_features(4);
  const auto ranking = Ranking::identity(4);
  const std::vector<std::size_t> labeled{1, 3};
  const std::vector<double> labels{1.0, 3.0};
  const auto model = fit_r2(universe, labeled, labels, ranking, 1, {10.0, 1.0, 1.0});
  CHECK(model.imputed() == std::vector<double>{0.0, 1.0, 1.0, 3.0});
  CHECK(model.star_mask() == std::vector<std::uint8_t>{1, 0, 0, 0});
}

TEST_CASE("fit_r2 with all points labeled and monotone labels is the identity") {
  const auto universe = line_features(5);
  const auto ranking = Ranking::identity(5);
  std::vector<std::size_t> labeled(5);
  std::iota(labeled.begin(), labeled.end(), std::size_t{0});
  const std::vector<double> labels{-2.0, -1.0, 0.5, 0.5, 3.0};
  const auto model = fit_r2(universe, labeled, labels, ranking, 1, {10.0, 1.0, 1.0});
  CHECK(model.imputed() == labels);
}

TEST_CASE("fit_r2 pools inverted anchors before imputing") {
  const auto universe = line_features(6);
  const auto ranking = Ranking::identity(6);
  const std::vector<std::size_t> labeled{0, 2, 4};
  const std::vector<double> labels{3.0, 1.0, 2.0};
  const auto model = fit_r2(universe, labeled, labels, ranking, 1, {10.0, 1.0, 1.0});
  CHECK(model.imputed() == std::vector<double>(6, 2.0));
}

TEST_CASE("fit_r2 star handling options") {
  const auto universe = line_features(4);
  const auto ranking = Ranking::identity(4);
  R2Options clamp;
  clamp.star_clamp_to_lowest = true;
  const auto model = fit_r2(universe, std::vector<std::size_t>{2},
                            std::vector<double>{1.5}, ranking, 1, {10.0, 1.0, 1.0}, clamp);
  CHECK(model.imputed() == std::vector<double>{1.5, 1.5, 1.5, 1.5});
}

TEST_CASE("fit_r2 validates input") {
  const auto universe = line_features(4);
  const auto ranking = Ranking::identity(4);
  CHECK_THROWS_AS(fit_r2(universe, std::vector<std::size_t>{}, std::vector<double>{},
                         ranking, 1),
                  BudgetError);
  CHECK_THROWS_AS(fit_r2(universe, std::vector<std::size_t>{7}, std::vector<double>{1.0},
                         ranking, 1),
                  DimensionError);
  CHECK_THROWS_AS(fit_r2(universe, std::vector<std::size_t>{1}, std::vector<double>{1.0},
                         ranking, 9),
                  ParameterError);
}

TEST_CASE("predict_r2 spec examples and neighbor oracle") {
  Rng rng(3);
  const std::size_t n = 40, d = 3;
  SampleSet universe(n, d);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : universe.row(i)) v = rng.uniform();
    values[i] = rng.uniform(-1.0, 1.0);
  }
  const auto ranking = ranking_from_values(values);
  std::vector<std::size_t> labeled(n);
  std::iota(labeled.begin(), labeled.end(), std::size_t{0});

  auto k1 = fit_r2(universe, labeled, values, ranking, 1);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(k1.predict(universe.row(i)) == doctest::Approx(k1.imputed()[i]));

  auto kn = fit_r2(universe, labeled, values, ranking, n);
  const double mean =
      std::accumulate(kn.imputed().begin(), kn.imputed().end(), 0.0) / n;
  CHECK(kn.predict(universe.row(0)) == doctest::Approx(mean));

  auto k3 = fit_r2(universe, labeled, values, ranking, 3);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> q(d);
    for (double& v : q) v = rng.uniform();
    const auto nn = knn_oracle(universe, q, 3);
    double expected = 0.0;
    for (std::size_t i : nn) expected += k3.imputed()[i];
    CHECK(predict_r2(k3, q) == doctest::Approx(expected / 3.0));
  }
  CHECK_THROWS_AS(k3.predict(std::vector<double>{0.0}), DimensionError);
}

TEST_CASE("perfect ranking and noiseless full labels interpolate at k=1") {
  Rng rng(11);
  const std::size_t n = 100, d = 4;
  SampleSet universe(n, d);
  std::vector<double> truth(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : universe.row(i)) v = rng.uniform();
    truth[i] = std::accumulate(universe.row(i).begin(), universe.row(i).end(), 0.0);
  }
  std::vector<std::size_t> labeled(n);
  std::iota(labeled.begin(), labeled.end(), std::size_t{0});
  const auto model =
      fit_r2(universe, labeled, truth, ranking_from_values(truth), 1, {100.0, 1.0, 1.0});
  std::vector<double> pred(n);
  for (std::size_t i = 0; i < n; ++i) pred[i] = model.predict(universe.row(i));
  CHECK(mse_eval(pred, truth) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("imputed values are monotone along the ranking off the star prefix") {
  Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 30;
    SampleSet universe(n, 2);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    const Ranking ranking(order);
    for (std::size_t i = 0; i < n; ++i)
      for (double& v : universe.row(i)) v = rng.uniform();
    Rng pick(rep);
    const auto labeled = sample_labeled_subset(n, 8, pick);
    std::vector<double> labels(labeled.size());
    for (double& v : labels) v = rng.normal();
    const auto model = fit_r2(universe, labeled, labels, ranking, 1, {2.0, 1.0, 1.0});
    double prev = -1e300;
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t i = ranking.index_at(p);
      if (model.star_mask()[i]) continue;
      CHECK(model.imputed()[i] >= prev);
      prev = model.imputed()[i];
    }
  }
}

TEST_CASE("permuting sample storage consistently leaves predictions unchanged") {
  Rng rng(5);
  const std::size_t n = 50, d = 3;
  SampleSet universe(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (double& v : universe.row(i)) v = rng.uniform();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  const Ranking ranking(order);
  Rng pick(8);
  const auto labeled = sample_labeled_subset(n, 12, pick);
  std::vector<double> labels(labeled.size());
  for (double& v : labels) v = rng.normal();
  const auto base = fit_r2(universe, labeled, labels, ranking, 3);

  // sigma maps old index -> new storage slot.
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  rng.shuffle(sigma);
  SampleSet permuted(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = universe.row(i);
    std::copy(src.begin(), src.end(), permuted.row(sigma[i]).begin());
  }
  std::vector<std::size_t> new_order(n);
  for (std::size_t p = 0; p < n; ++p) new_order[p] = sigma[order[p]];
  std::vector<std::size_t> new_labeled(labeled.size());
  for (std::size_t a = 0; a < labeled.size(); ++a) new_labeled[a] = sigma[labeled[a]];
  const auto moved = fit_r2(permuted, new_labeled, labels, Ranking(new_order), 3);

  for (int rep = 0; rep < 25; ++rep) {
    std::vector<double> q(d);
    for (double& v : q) v = rng.uniform();
    CHECK(base.predict(q) == doctest::Approx(moved.predict(q)).epsilon(1e-12));
  }
}

TEST_CASE("value displacement bound holds for every small permutation") {
  // Oracle check: sum over rank positions of squared value displacement is
  // at most 8 M^2 sqrt(2 nu) n, with nu measured from the rankings.
  const double M = 1.0;
  Rng rng(17);
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    do {
      const Ranking hat(order);
      for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> f(n);
        for (double& v : f) v = rng.uniform(-M, M);
        const auto truth = ranking_from_values(f);
        const double nu = kendall_tau(truth, hat).nu;
        double lhs = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
          const double diff = f[truth.index_at(p)] - f[hat.index_at(p)];
          lhs += diff * diff;
        }
        CHECK(lhs <= 8.0 * M * M * std::sqrt(2.0 * nu) * static_cast<double>(n) + 1e-12);
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST_CASE("cv_select basics") {
  SampleSet val(3, 1, {0.0, 1.0, 2.0});
  val.set_label(0, 0.0);
  val.set_label(1, 1.0);
  val.set_label(2, 2.0);

  const Candidate exact{"exact", [](std::span<const double> q) { return q[0]; }};
  const Candidate off{"off", [](std::span<const double> q) { return q[0] + 1.0; }};

  CHECK(cv_select({off}, val, 10.0).chosen == 0);
  CHECK(cv_select({off, exact, off}, val, 10.0).chosen == 1);
  // Ties go to the earlier candidate.
  CHECK(cv_select({exact, exact}, val, 10.0).chosen == 0);
  // Predictions are clipped to [-M, M] before scoring.
  const Candidate wild{"wild", [](std::span<const double>) { return 1e9; }};
  const auto sel = cv_select({wild}, val, 2.0);
  CHECK(sel.scores[0] == doctest::Approx((4.0 + 1.0 + 0.0) / 3.0));

  SampleSet unlabeled(2, 1, {0.0, 1.0});
  CHECK_THROWS_AS(cv_select({exact}, unlabeled, 1.0), BudgetError);
  CHECK_THROWS_AS(cv_select({}, val, 1.0), ParameterError);
}

TEST_CASE("cv_select prefers 5-NN over R2 fed a shuffled ranking") {
  int knn_wins = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(900 + trial);
    NonparamSpec spec;
    const auto data = gen_nonparametric(spec, 600, 1, rng);
    const std::size_t m = 200;
    auto labeled = sample_labeled_subset(600, m, rng);
    rng.shuffle(labeled);
    const std::vector<std::size_t> tr(labeled.begin(), labeled.begin() + m / 2);
    const std::vector<std::size_t> va(labeled.begin() + m / 2, labeled.end());

    // Adversarial ordinal input: a uniformly random permutation (nu ~ 0.5).
    std::vector<std::size_t> order(600);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);

    std::vector<double> tr_labels;
    for (std::size_t i : tr) tr_labels.push_back(data.train.label(i));
    const auto r2 = fit_r2(data.train, tr, tr_labels, Ranking(order), 5);
    SampleSet tr_set(tr.size(), data.train.dim());
    for (std::size_t a = 0; a < tr.size(); ++a) {
      const auto src = data.train.row(tr[a]);
      std::copy(src.begin(), src.end(), tr_set.row(a).begin());
      tr_set.set_label(a, data.train.label(tr[a]));
    }
    const auto knn = fit_knn(tr_set, 5);

    SampleSet val_set(va.size(), data.train.dim());
    for (std::size_t a = 0; a < va.size(); ++a) {
      const auto src = data.train.row(va[a]);
      std::copy(src.begin(), src.end(), val_set.row(a).begin());
      val_set.set_label(a, data.train.label(va[a]));
    }
    const std::vector<Candidate> candidates{
        {"r2-5", [&](std::span<const double> q) { return r2.predict(q); }},
        {"knn-5", [&](std::span<const double> q) { return knn.predict(q); }}};
    if (cv_select(candidates, val_set, 1e6).chosen == 1) ++knn_wins;
  }
  CHECK(knn_wins >= 16);
}

TEST_CASE("R2 model serialization round-trips predictions") {
  Rng rng(44);
  const std::size_t n = 30, d = 2;
  SampleSet universe(n, d);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : universe.row(i)) v = rng.uniform();
    values[i] = rng.normal();
  }
  Rng pick(1);
  const auto labeled = sample_labeled_subset(n, 10, pick);
  std::vector<double> labels;
  for (std::size_t i : labeled) labels.push_back(values[i]);
  const auto model =
      fit_r2(universe, labeled, labels, ranking_from_values(values), 3, {5.0, 1.0, 1.0});

  const std::string path = "r2_model_test.tmp";
  model.save(path);
  const auto loaded = R2Model::load(path);
  std::remove(path.c_str());

  CHECK(loaded.k() == model.k());
  CHECK(loaded.imputed() == model.imputed());
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> q{rng.uniform(), rng.uniform()};
    CHECK(loaded.predict(q) == model.predict(q));
  }
  CHECK_THROWS_AS(R2Model::load("does_not_exist.tmp"), Error);
}
