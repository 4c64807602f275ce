#include "ordreg/r2.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "ordreg/isotonic.hpp"
#include "ordreg/linalg.hpp"

namespace ordreg {

R2Model fit_r2(const SampleSet& universe, std::span<const std::size_t> labeled_idx,
               std::span<const double> labels, const Ranking& ranking, std::size_t k,
               const ModelBounds& bounds, const R2Options& options) {
  const std::size_t n = universe.size();
  if (labeled_idx.empty()) throw BudgetError("fit_r2: empty labeled set");
  if (labeled_idx.size() != labels.size())
    throw DimensionError("fit_r2: labeled index/value size mismatch");
  if (ranking.size() != n) throw DimensionError("fit_r2: ranking size != universe size");
  if (k < 1 || k > n) throw ParameterError("fit_r2: need 1 <= k <= n");
  bounds.validate();

  std::vector<std::uint8_t> seen(n, 0);
  for (std::size_t idx : labeled_idx) {
    if (idx >= n) throw DimensionError("fit_r2: labeled index out of range");
    if (seen[idx]) throw ParameterError("fit_r2: duplicate labeled index");
    seen[idx] = 1;
  }
  for (double y : labels)
    if (!std::isfinite(y)) throw InvalidValueError("fit_r2: non-finite label");

  // Labeled samples sorted by their rank position.
  const auto pos = ranking.positions();
  const std::size_t m = labeled_idx.size();
  std::vector<std::size_t> order(m);
  for (std::size_t a = 0; a < m; ++a) order[a] = a;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pos[labeled_idx[a]] < pos[labeled_idx[b]];
  });
  std::vector<double> values(m);
  for (std::size_t a = 0; a < m; ++a) values[a] = labels[order[a]];

  const IsotonicFit iso = fit_bounded_isotonic(values, bounds.M);

  R2Model model;
  model.n_ = n;
  model.d_ = universe.dim();
  model.k_ = k;
  model.features_ = universe.features();
  model.bounds_ = bounds;
  model.options_ = options;
  model.imputed_.assign(n, 0.0);
  model.star_.assign(n, 0);

  // Walk rank positions; each sample inherits the latest anchor at or below
  // its position.
  std::size_t next_anchor = 0;
  bool have_anchor = false;
  double current = 0.0;
  const double star_value = options.star_clamp_to_lowest ? iso.fitted.front() : 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    while (next_anchor < m && pos[labeled_idx[order[next_anchor]]] == p) {
      current = iso.fitted[next_anchor];
      have_anchor = true;
      ++next_anchor;
    }
    const std::size_t i = ranking.index_at(p);
    if (have_anchor) {
      model.imputed_[i] = current;
    } else {
      model.imputed_[i] = star_value;
      model.star_[i] = 1;
    }
  }
  return model;
}

double R2Model::predict(std::span<const double> query) const {
  if (query.size() != d_) throw DimensionError("R2Model::predict: dimension mismatch");
  if (!options_.exclude_star_neighbors) {
    const auto nn = k_nearest(features_, n_, d_, query, k_);
    double s = 0.0;
    for (std::size_t i : nn) s += imputed_[i];
    return s / static_cast<double>(nn.size());
  }
  // Restricted neighbor set: compact the non-star rows, then scan.
  std::vector<double> rows;
  std::vector<std::size_t> map;
  rows.reserve(n_ * d_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (star_[i]) continue;
    rows.insert(rows.end(), features_.begin() + i * d_, features_.begin() + (i + 1) * d_);
    map.push_back(i);
  }
  if (map.empty())
    throw DegenerateError("R2Model::predict: all rows star-imputed and excluded");
  const std::size_t kk = std::min(k_, map.size());
  const auto nn = k_nearest(rows, map.size(), d_, query, kk);
  double s = 0.0;
  for (std::size_t r : nn) s += imputed_[map[r]];
  return s / static_cast<double>(nn.size());
}

double predict_r2(const R2Model& model, std::span<const double> query) {
  return model.predict(query);
}

CvSelection cv_select(const std::vector<Candidate>& candidates,
                      const SampleSet& validation, double bound) {
  if (candidates.empty()) throw ParameterError("cv_select: no candidates");
  const auto idx = validation.labeled_indices();
  if (idx.empty()) throw BudgetError("cv_select: empty validation set");

  CvSelection sel;
  sel.scores.resize(candidates.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    double sse = 0.0;
    for (std::size_t i : idx) {
      double p = candidates[c].predict(validation.row(i));
      p = std::clamp(p, -bound, bound);
      const double r = p - validation.label(i);
      sse += r * r;
    }
    sel.scores[c] = sse / static_cast<double>(idx.size());
    if (sel.scores[c] < best) {
      best = sel.scores[c];
      sel.chosen = c;
    }
  }
  return sel;
}

namespace {

void write_doubles(std::ostream& os, std::span<const double> v) {
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  os << "\n";
}

}  // namespace

void R2Model::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw Error("R2Model::save: cannot open " + path);
  os << "ordreg-r2 1\n";
  os.precision(17);
  os << bounds_.M << " " << bounds_.s << " " << bounds_.L << "\n";
  os << k_ << " " << n_ << " " << d_ << " " << (options_.star_clamp_to_lowest ? 1 : 0)
     << " " << (options_.exclude_star_neighbors ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < n_; ++i)
    write_doubles(os, {features_.data() + i * d_, d_});
  write_doubles(os, imputed_);
  for (std::size_t i = 0; i < n_; ++i) os << (i ? " " : "") << int(star_[i]);
  os << "\n";
}

R2Model R2Model::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("R2Model::load: cannot open " + path);
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "ordreg-r2" || version != 1)
    throw Error("R2Model::load: unrecognized model file");
  R2Model m;
  int clamp = 0, exclude = 0;
  is >> m.bounds_.M >> m.bounds_.s >> m.bounds_.L;
  is >> m.k_ >> m.n_ >> m.d_ >> clamp >> exclude;
  if (!is || m.n_ == 0 || m.d_ == 0) throw Error("R2Model::load: corrupt header");
  m.options_.star_clamp_to_lowest = clamp != 0;
  m.options_.exclude_star_neighbors = exclude != 0;
  m.features_.resize(m.n_ * m.d_);
  for (double& v : m.features_) is >> v;
  m.imputed_.resize(m.n_);
  for (double& v : m.imputed_) is >> v;
  m.star_.resize(m.n_);
  for (auto& b : m.star_) {
    int x;
    is >> x;
    b = static_cast<std::uint8_t>(x);
  }
  if (!is) throw Error("R2Model::load: truncated model file");
  return m;
}

}  // namespace ordreg
