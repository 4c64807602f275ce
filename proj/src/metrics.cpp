#include "ordreg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ordreg/linalg.hpp"

namespace ordreg {

namespace {

// Counts inversions of v by merge sort, O(n log n).
std::uint64_t count_inversions(std::vector<std::size_t>& v,
                               std::vector<std::size_t>& scratch, std::size_t lo,
                               std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = count_inversions(v, scratch, lo, mid) +
                      count_inversions(v, scratch, mid, hi);
  std::size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (v[a] <= v[b]) {
      scratch[out++] = v[a++];
    } else {
      inv += mid - a;
      scratch[out++] = v[b++];
    }
  }
  while (a < mid) scratch[out++] = v[a++];
  while (b < hi) scratch[out++] = v[b++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, v.begin() + lo);
  return inv;
}

}  // namespace

RankingNoiseReport kendall_tau(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) throw DimensionError("kendall_tau: size mismatch");
  const std::size_t n = a.size();
  // Walk a's order and record each sample's position under b: inversions of
  // that sequence are exactly the discordant unordered pairs.
  const auto pos_b = b.positions();
  std::vector<std::size_t> seq(n);
  for (std::size_t k = 0; k < n; ++k) seq[k] = pos_b[a.index_at(k)];
  std::vector<std::size_t> scratch(n);
  const std::uint64_t unordered = count_inversions(seq, scratch, 0, n);

  RankingNoiseReport report;
  report.discordant_ordered = 2 * unordered;
  report.nu = static_cast<double>(report.discordant_ordered) /
              (static_cast<double>(n) * static_cast<double>(n));
  return report;
}

Ranking ranking_from_values(std::span<const double> values) {
  if (values.empty()) throw DimensionError("ranking_from_values: empty input");
  for (double v : values)
    if (std::isnan(v)) throw InvalidValueError("ranking_from_values: NaN value");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  return Ranking(std::move(order));
}

double mse_eval(std::span<const double> pred, std::span<const double> truth) {
  if (pred.empty()) throw DimensionError("mse_eval: empty input");
  if (pred.size() != truth.size()) throw DimensionError("mse_eval: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double diff = pred[i] - truth[i];
    s += diff * diff;
  }
  return s / static_cast<double>(pred.size());
}

std::vector<std::size_t> sample_labeled_subset(std::size_t n, std::size_t m, Rng& rng) {
  if (m < 1 || m > n) throw BudgetError("sample_labeled_subset: need 1 <= m <= n");
  // Partial Fisher-Yates: the first m entries are a uniform m-subset.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::size_t> k_nearest(std::span<const double> rows, std::size_t n,
                                   std::size_t d, std::span<const double> query,
                                   std::size_t k) {
  if (query.size() != d) throw DimensionError("k_nearest: query dimension mismatch");
  if (k < 1 || k > n) throw ParameterError("k_nearest: need 1 <= k <= n");
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i)
    dist[i] = squared_distance(rows.subspan(i * d, d), query);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (dist[a] != dist[b]) return dist[a] < dist[b];
                      return a < b;
                    });
  idx.resize(k);
  return idx;
}

}  // namespace ordreg
