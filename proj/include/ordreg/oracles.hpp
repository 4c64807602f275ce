#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ordreg/rank_aggregate.hpp"
#include "ordreg/rng.hpp"
#include "ordreg/types.hpp"

namespace ordreg {

/// Pairwise oracle with call counting, so budget accounting can be asserted
/// after every fit. Returns +1 if it believes value(i) > value(j).
class ComparisonOracle {
 public:
  virtual ~ComparisonOracle() = default;

  int compare(std::size_t i, std::size_t j) {
    ++calls_;
    return do_compare(i, j);
  }
  std::size_t calls() const { return calls_; }

 protected:
  virtual int do_compare(std::size_t i, std::size_t j) = 0;

 private:
  std::size_t calls_ = 0;
};

/// Comparison oracle backed by a vector of true values and a noise model;
/// owns its random stream.
class ValueComparisonOracle final : public ComparisonOracle {
 public:
  ValueComparisonOracle(std::vector<double> truth, ComparisonOracleConfig cfg, Rng rng)
      : truth_(std::move(truth)), cfg_(cfg), rng_(rng) {}

 protected:
  int do_compare(std::size_t i, std::size_t j) override {
    if (i == j) throw InvalidValueError("ValueComparisonOracle: i == j");
    if (i >= truth_.size() || j >= truth_.size())
      throw DimensionError("ValueComparisonOracle: index out of range");
    return simulate_judgment(truth_[i], truth_[j], cfg_, rng_);
  }

 private:
  std::vector<double> truth_;
  ComparisonOracleConfig cfg_;
  Rng rng_;
};

/// Per-sample label oracle with call counting.
class LabelOracle {
 public:
  virtual ~LabelOracle() = default;

  double query(std::size_t i) {
    ++calls_;
    return do_query(i);
  }
  std::size_t calls() const { return calls_; }

 protected:
  virtual double do_query(std::size_t i) = 0;

 private:
  std::size_t calls_ = 0;
};

/// y = truth[i] + N(0, sigma^2), fresh noise per query.
class GaussianLabelOracle final : public LabelOracle {
 public:
  GaussianLabelOracle(std::vector<double> truth, double sigma, Rng rng)
      : truth_(std::move(truth)), sigma_(sigma), rng_(rng) {
    if (sigma < 0) throw ParameterError("GaussianLabelOracle: sigma must be >= 0");
  }

 protected:
  double do_query(std::size_t i) override {
    if (i >= truth_.size()) throw DimensionError("GaussianLabelOracle: index out of range");
    return truth_[i] + rng_.normal(0.0, sigma_);
  }

 private:
  std::vector<double> truth_;
  double sigma_;
  Rng rng_;
};

}  // namespace ordreg
