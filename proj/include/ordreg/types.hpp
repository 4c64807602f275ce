#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordreg {

// Error taxonomy shared by every module. Callers catch the base class or a
// specific kind depending on how much they care.
class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape or index mismatch between inputs.
class DimensionError : public Error {
  using Error::Error;
};

// A supervision budget is empty, infeasible, or exhausted.
class BudgetError : public Error {
  using Error::Error;
};

// A hyperparameter is outside its valid range.
class ParameterError : public Error {
  using Error::Error;
};

// NaN/Inf where a finite value is required.
class InvalidValueError : public Error {
  using Error::Error;
};

// A quantity that must be nonzero (norm, variance, projection) vanished.
class DegenerateError : public Error {
  using Error::Error;
};

// Malformed experiment configuration.
class ConfigError : public Error {
  using Error::Error;
};

/// Feature matrix (row-major, n x d) with optional per-row labels.
class SampleSet {
 public:
  SampleSet(std::size_t n, std::size_t d)
      : n_(n), d_(d), features_(n * d, 0.0), labels_(n, 0.0), labeled_(n, 0) {
    if (n == 0 || d == 0) throw DimensionError("SampleSet: n and d must be >= 1");
  }

  SampleSet(std::size_t n, std::size_t d, std::vector<double> features)
      : SampleSet(n, d) {
    if (features.size() != n * d)
      throw DimensionError("SampleSet: feature buffer size != n*d");
    for (double v : features)
      if (!std::isfinite(v)) throw InvalidValueError("SampleSet: non-finite feature");
    features_ = std::move(features);
  }

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * d_, d_};
  }
  std::span<double> row(std::size_t i) { return {features_.data() + i * d_, d_}; }

  double at(std::size_t i, std::size_t j) const { return features_[i * d_ + j]; }
  double& at(std::size_t i, std::size_t j) { return features_[i * d_ + j]; }

  const std::vector<double>& features() const { return features_; }

  bool has_label(std::size_t i) const { return labeled_[i] != 0; }
  double label(std::size_t i) const {
    if (!has_label(i)) throw InvalidValueError("SampleSet: row has no label");
    return labels_[i];
  }
  void set_label(std::size_t i, double y) {
    if (!std::isfinite(y)) throw InvalidValueError("SampleSet: non-finite label");
    labels_[i] = y;
    labeled_[i] = 1;
  }
  void clear_label(std::size_t i) { labeled_[i] = 0; }

  std::size_t labeled_count() const {
    std::size_t c = 0;
    for (auto b : labeled_) c += b;
    return c;
  }
  std::vector<std::size_t> labeled_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n_; ++i)
      if (labeled_[i]) idx.push_back(i);
    return idx;
  }

 private:
  std::size_t n_, d_;
  std::vector<double> features_;
  std::vector<double> labels_;
  std::vector<std::uint8_t> labeled_;
};

/// Permutation of {0,...,n-1}: order()[k] is the sample index at rank
/// position k (position 0 = smallest function value).
class Ranking {
 public:
  explicit Ranking(std::vector<std::size_t> order) : order_(std::move(order)) {
    std::vector<std::uint8_t> seen(order_.size(), 0);
    for (std::size_t idx : order_) {
      if (idx >= order_.size() || seen[idx])
        throw InvalidValueError("Ranking: order is not a permutation");
      seen[idx] = 1;
    }
    if (order_.empty()) throw DimensionError("Ranking: empty order");
  }

  static Ranking identity(std::size_t n) {
    std::vector<std::size_t> o(n);
    for (std::size_t i = 0; i < n; ++i) o[i] = i;
    return Ranking(std::move(o));
  }

  std::size_t size() const { return order_.size(); }
  std::size_t index_at(std::size_t pos) const { return order_[pos]; }
  const std::vector<std::size_t>& order() const { return order_; }

  // Inverse map: positions()[i] is the rank position of sample i.
  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> pos(order_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) pos[order_[k]] = k;
    return pos;
  }

  bool operator==(const Ranking& other) const { return order_ == other.order_; }

 private:
  std::vector<std::size_t> order_;
};

/// One pairwise judgment: z = +1 asserts value(i) > value(j), z = -1 the
/// opposite.
struct Comparison {
  std::size_t i;
  std::size_t j;
  int z;
};

class ComparisonSet {
 public:
  ComparisonSet() = default;

  void add(std::size_t i, std::size_t j, int z) {
    if (i == j) throw InvalidValueError("ComparisonSet: i == j");
    if (z != 1 && z != -1) throw InvalidValueError("ComparisonSet: z must be +/-1");
    triples_.push_back({i, j, z});
  }

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const Comparison& operator[](std::size_t k) const { return triples_[k]; }
  auto begin() const { return triples_.begin(); }
  auto end() const { return triples_.end(); }

  // Largest index mentioned plus one; 0 for an empty set.
  std::size_t min_universe() const {
    std::size_t n = 0;
    for (const auto& c : triples_) n = std::max({n, c.i + 1, c.j + 1});
    return n;
  }

 private:
  std::vector<Comparison> triples_;
};

/// Function-class bounds: values in [-M, M], Holder exponent s, constant L.
struct ModelBounds {
  double M = 1e6;
  double s = 1.0;
  double L = 1.0;

  void validate() const {
    if (!(M > 0)) throw ParameterError("ModelBounds: M must be > 0");
    if (!(s > 0) || s > 1) throw ParameterError("ModelBounds: s must be in (0,1]");
    if (!(L > 0)) throw ParameterError("ModelBounds: L must be > 0");
  }
};

/// Kendall-Tau disagreement between two rankings. discordant_ordered counts
/// ordered pairs (both orientations), nu = discordant_ordered / n^2.
struct RankingNoiseReport {
  std::uint64_t discordant_ordered = 0;
  double nu = 0.0;
};

}  // namespace ordreg
