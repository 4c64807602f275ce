#include "ordreg/clr.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "ordreg/baselines.hpp"
#include "ordreg/linalg.hpp"
#include "ordreg/metrics.hpp"

namespace ordreg {

PairwisePool build_pairwise_pool(const SampleSet& universe) {
  if (universe.size() < 2) throw BudgetError("build_pairwise_pool: need at least 2 samples");
  const std::size_t d = universe.dim();
  const std::size_t pairs = universe.size() / 2;
  PairwisePool pool;
  pool.dim = d;
  pool.diffs.resize(pairs * d);
  pool.provenance.reserve(pairs);
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto a = universe.row(2 * k);
    const auto b = universe.row(2 * k + 1);
    for (std::size_t j = 0; j < d; ++j) pool.diffs[k * d + j] = a[j] - b[j];
    pool.provenance.emplace_back(2 * k, 2 * k + 1);
  }
  return pool;
}

namespace {

// Full-gradient descent on
//   (1/B) sum hinge(1 - z <v,u>/tau) + (reg/2)||v||^2 + (prox/2)||v - anchor||^2
// with step0/sqrt(t) steps. Subgradient steps keep circling the minimizer,
// so the tail quarter of the iterates is averaged. Returns the unnormalized
// minimizer estimate.
std::vector<double> hinge_descent(const PairwisePool& pool,
                                  std::span<const std::size_t> rows,
                                  std::span<const int> labels, double tau, double reg,
                                  double prox, const std::vector<double>* anchor,
                                  std::size_t iterations, double step0) {
  const std::size_t d = pool.dim;
  const std::size_t batch = rows.size();
  std::vector<double> v = anchor ? *anchor : std::vector<double>(d, 0.0);
  std::vector<double> grad(d), tail(d, 0.0);
  const std::size_t tail_from = iterations - iterations / 4;
  std::size_t tail_count = 0;
  for (std::size_t t = 1; t <= iterations; ++t) {
    for (std::size_t j = 0; j < d; ++j) {
      grad[j] = reg * v[j];
      if (anchor) grad[j] += prox * (v[j] - (*anchor)[j]);
    }
    for (std::size_t b = 0; b < batch; ++b) {
      const auto u = pool.row(rows[b]);
      const double margin = labels[b] * dot(v, u) / tau;
      if (margin < 1.0) {
        const double coef = labels[b] / (tau * static_cast<double>(batch));
        for (std::size_t j = 0; j < d; ++j) grad[j] -= coef * u[j];
      }
    }
    const double eta = step0 / std::sqrt(static_cast<double>(t));
    for (std::size_t j = 0; j < d; ++j) v[j] -= eta * grad[j];
    if (t > tail_from) {
      for (std::size_t j = 0; j < d; ++j) tail[j] += v[j];
      ++tail_count;
    }
  }
  if (tail_count > 0)
    for (std::size_t j = 0; j < d; ++j) tail[j] /= static_cast<double>(tail_count);
  return tail_count > 0 ? tail : v;
}

std::vector<std::size_t> draw_without_replacement(std::vector<std::size_t>& pool_ids,
                                                  std::size_t count, Rng& rng) {
  // Partial Fisher-Yates over the remaining ids; consumed ids are removed.
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_index(pool_ids.size() - i));
    std::swap(pool_ids[pool_ids.size() - 1 - i], pool_ids[j]);
    out.push_back(pool_ids[pool_ids.size() - 1 - i]);
  }
  pool_ids.resize(pool_ids.size() - count);
  return out;
}

std::vector<int> query_rows(const PairwisePool& pool, std::span<const std::size_t> rows,
                            ComparisonOracle& oracle) {
  std::vector<int> z;
  z.reserve(rows.size());
  for (std::size_t r : rows) {
    const auto& [i, j] = pool.provenance[r];
    z.push_back(oracle.compare(i, j));
  }
  return z;
}

}  // namespace

DirectionFit fit_passive_direction(const PairwisePool& pool, ComparisonOracle& oracle,
                                   std::size_t budget,
                                   const PassiveDirectionOptions& options, Rng& rng) {
  if (budget < 1) throw BudgetError("fit_passive_direction: budget must be >= 1");
  if (budget > pool.size())
    throw BudgetError("fit_passive_direction: budget exceeds pool size");

  std::vector<std::size_t> ids(pool.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  const auto rows = draw_without_replacement(ids, budget, rng);
  const auto labels = query_rows(pool, rows, oracle);

  auto v = hinge_descent(pool, rows, labels, 1.0, options.reg, 0.0, nullptr,
                         options.iterations, options.step0);
  if (!(norm(v) > 0))
    throw DegenerateError("fit_passive_direction: zero direction (all-zero differences?)");
  normalize(v);
  return {std::move(v), {budget, 0.0}};
}

DirectionFit fit_active_direction(const PairwisePool& pool, ComparisonOracle& oracle,
                                  std::size_t budget,
                                  const ActiveDirectionOptions& options, Rng& rng) {
  if (options.rounds < 1) throw ParameterError("fit_active_direction: rounds must be >= 1");
  if (budget < options.rounds)
    throw BudgetError("fit_active_direction: budget smaller than round count");
  if (budget > pool.size())
    throw BudgetError("fit_active_direction: budget exceeds pool size");

  std::vector<std::size_t> ids(pool.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});

  // Warm start on a uniform slice of the budget.
  const std::size_t warm =
      std::max<std::size_t>(1, static_cast<std::size_t>(options.warm_fraction *
                                                        static_cast<double>(budget)));
  std::vector<std::size_t> queried = draw_without_replacement(ids, warm, rng);
  std::vector<int> labels = query_rows(pool, queried, oracle);
  auto v = hinge_descent(pool, queried, labels, 1.0, options.reg, 0.0, nullptr,
                         options.iterations, options.step0);
  if (!(norm(v) > 0)) throw DegenerateError("fit_active_direction: zero warm-start direction");
  normalize(v);

  // Initial band: a quantile of |<v0, u>| over the full pool. The band picks
  // which rows get queried; every refit minimizes the plain hinge loss over
  // everything queried so far, warm-started at the previous direction.
  std::vector<double> sorted(pool.size());
  for (std::size_t r = 0; r < pool.size(); ++r) sorted[r] = std::abs(dot(v, pool.row(r)));
  std::sort(sorted.begin(), sorted.end());
  const double q = std::clamp(options.band_quantile, 0.0, 1.0);
  double band = sorted[static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1))];
  if (!(band > 0)) band = sorted.back();

  const std::size_t remaining = budget - warm;
  const double initial_band = band;
  double final_band = band;
  for (std::size_t round = 0; round < options.rounds; ++round) {
    std::size_t quota = remaining / options.rounds;
    if (round < remaining % options.rounds) ++quota;
    if (quota == 0) {
      band /= 2.0;
      continue;
    }

    std::vector<std::size_t> candidates;
    for (std::size_t r : ids)
      if (std::abs(dot(v, pool.row(r))) <= band) candidates.push_back(r);
    if (candidates.empty()) {
      band *= 2.0;  // widen once
      for (std::size_t r : ids)
        if (std::abs(dot(v, pool.row(r))) <= band) candidates.push_back(r);
      if (candidates.empty())
        throw BudgetError("fit_active_direction: band exhausted, no pool rows left inside");
    }
    final_band = band;

    const std::size_t take = std::min(quota, candidates.size());
    const auto rows = draw_without_replacement(candidates, take, rng);
    // Remove the queried rows from the unqueried set.
    {
      std::vector<std::uint8_t> gone(pool.size(), 0);
      for (std::size_t r : rows) gone[r] = 1;
      ids.erase(std::remove_if(ids.begin(), ids.end(),
                               [&](std::size_t r) { return gone[r]; }),
                ids.end());
    }
    const auto z = query_rows(pool, rows, oracle);
    queried.insert(queried.end(), rows.begin(), rows.end());
    labels.insert(labels.end(), z.begin(), z.end());

    // Band-scaled hinge via change of variables: minimizing
    // hinge(1 - z<v,u>/tau) is the plain hinge problem started at
    // v_prev/tau; the scale washes out in the normalization. At norm 1/tau
    // the fresh band rows sit right at the margin, so the fit discriminates
    // on the scale that is still undecided, while earlier rows are far
    // outside the margin and only push back if the direction strays.
    const double tau = std::max(band, 1e-12);
    std::vector<double> anchor(v);
    for (double& x : anchor) x /= tau;
    auto next = hinge_descent(pool, queried, labels, 1.0, options.reg, options.proximal,
                              &anchor, options.iterations, options.step0);
    if (norm(next) > 0) {
      normalize(next);
      v = std::move(next);
    }
    band /= 2.0;
  }
  return {std::move(v), {queried.size(), final_band}};
}

double estimate_scale(std::span<const double> direction, const SampleSet& samples) {
  const auto idx = samples.labeled_indices();
  if (idx.empty()) throw BudgetError("estimate_scale: no labeled samples");
  if (direction.size() != samples.dim())
    throw DimensionError("estimate_scale: direction dimension mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i : idx) {
    const double t = dot(direction, samples.row(i));
    num += t * samples.label(i);
    den += t * t;
  }
  if (!(den > 0)) throw DegenerateError("estimate_scale: zero projection energy");
  return num / den;
}

CLRModel fit_clr(const SampleSet& universe, ComparisonOracle& comparison_oracle,
                 LabelOracle& label_oracle, const ClrConfig& config, Rng& rng) {
  if (config.comparison_budget < 1 || config.label_budget < 1)
    throw BudgetError("fit_clr: budgets must be >= 1");

  const PairwisePool pool = build_pairwise_pool(universe);
  if (config.comparison_budget > pool.size())
    throw BudgetError("fit_clr: comparison budget exceeds pairwise pool");

  DirectionFit dir =
      config.mode == DirectionMode::passive
          ? fit_passive_direction(pool, comparison_oracle, config.comparison_budget,
                                  config.passive, rng)
          : fit_active_direction(pool, comparison_oracle, config.comparison_budget,
                                 config.active, rng);

  if (config.label_budget > universe.size())
    throw BudgetError("fit_clr: label budget exceeds universe size");
  const auto labeled_idx = sample_labeled_subset(universe.size(), config.label_budget, rng);
  SampleSet labeled(labeled_idx.size(), universe.dim());
  for (std::size_t a = 0; a < labeled_idx.size(); ++a) {
    const auto src = universe.row(labeled_idx[a]);
    std::copy(src.begin(), src.end(), labeled.row(a).begin());
    labeled.set_label(a, label_oracle.query(labeled_idx[a]));
  }

  CLRModel model;
  model.direction = dir.direction;
  model.report = dir.report;
  model.scale = estimate_scale(model.direction, labeled);

  if (config.augment) {
    const std::size_t d = universe.dim();
    const std::size_t m = labeled.size();
    // Augmented design (x; <v, x>) with the projection column rescaled to
    // unit variance so it cannot dominate the raw features.
    std::vector<double> proj(m);
    double mean = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      proj[a] = dot(model.direction, labeled.row(a));
      mean += proj[a];
    }
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (double p : proj) var += (p - mean) * (p - mean);
    var /= static_cast<double>(m);
    const double scale = var > 1e-24 ? std::sqrt(var) : 1.0;

    SampleSet aug(m, d + 1);
    for (std::size_t a = 0; a < m; ++a) {
      const auto src = labeled.row(a);
      auto dst = aug.row(a);
      std::copy(src.begin(), src.end(), dst.begin());
      dst[d] = proj[a] / scale;
      aug.set_label(a, labeled.label(a));
    }
    Rng svr_rng = rng.child(0x5f72);
    LinearModel svr = fit_linear_svr(aug, config.svr, svr_rng);
    svr.weights[d] /= scale;  // fold the rescaling back into the raw weight
    model.augmented_weights = svr.weights;
    model.augmented_intercept = svr.intercept;
  }
  return model;
}

double CLRModel::predict(std::span<const double> query) const {
  if (query.size() != direction.size())
    throw DimensionError("CLRModel::predict: dimension mismatch");
  const double proj = dot(direction, query);
  if (!augmented_weights) return scale * proj;
  const auto& w = *augmented_weights;
  double s = augmented_intercept + w.back() * proj;
  for (std::size_t j = 0; j < query.size(); ++j) s += w[j] * query[j];
  return s;
}

double predict_clr(const CLRModel& model, std::span<const double> query) {
  return model.predict(query);
}

void CLRModel::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw Error("CLRModel::save: cannot open " + path);
  os << "ordreg-clr 1\n";
  os.precision(17);
  os << direction.size() << " " << scale << " " << (augmented_weights ? 1 : 0) << "\n";
  for (std::size_t j = 0; j < direction.size(); ++j)
    os << (j ? " " : "") << direction[j];
  os << "\n";
  if (augmented_weights) {
    for (std::size_t j = 0; j < augmented_weights->size(); ++j)
      os << (j ? " " : "") << (*augmented_weights)[j];
    os << "\n" << augmented_intercept << "\n";
  }
}

CLRModel CLRModel::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("CLRModel::load: cannot open " + path);
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "ordreg-clr" || version != 1)
    throw Error("CLRModel::load: unrecognized model file");
  std::size_t d = 0;
  int has_aug = 0;
  CLRModel m;
  is >> d >> m.scale >> has_aug;
  if (!is || d == 0) throw Error("CLRModel::load: corrupt header");
  m.direction.resize(d);
  for (double& v : m.direction) is >> v;
  if (has_aug) {
    std::vector<double> w(d + 1);
    for (double& v : w) is >> v;
    is >> m.augmented_intercept;
    m.augmented_weights = std::move(w);
  }
  if (!is) throw Error("CLRModel::load: truncated model file");
  return m;
}

}  // namespace ordreg
