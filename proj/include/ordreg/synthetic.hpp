#pragma once

#include <span>
#include <vector>

#include "ordreg/rng.hpp"
#include "ordreg/types.hpp"

namespace ordreg {

struct StandardizeStats {
  double mean = 0.0;
  double stddev = 1.0;
};

/// Mean and population standard deviation of a reference sample.
StandardizeStats compute_stats(std::span<const double> values);

/// (v - mean) / stddev with frozen reference statistics, so test splits are
/// mapped with the train-set transform.
std::vector<double> standardize(std::span<const double> values,
                                const StandardizeStats& stats);

struct NonparamSpec {
  std::size_t d = 8;
  // Component-function parameter; a negative value means "draw uniformly
  // from [0, 10] per dataset".
  double p = -1.0;
  double label_sigma = 0.5;
  // Draw an independent p per dimension instead of one shared value.
  bool per_dimension_p = false;
};

struct NonparamDataset {
  SampleSet train;  // labels are noisy standardized function values
  SampleSet test;   // unlabeled
  std::vector<double> truth_train;  // noiseless standardized values
  std::vector<double> truth_test;
  StandardizeStats stats;  // raw-value train statistics
  std::vector<double> p;   // realized parameter(s)
};

/// Component function value, `which` in {1,2,3,4}.
double nonparam_component(int which, double p, double x);

/// Additive model on [0,1]^d: dimension i (1-based) contributes component
/// (i-1) mod 4 + 1; values standardized to zero mean / unit variance on the
/// train split; train labels get N(0, sigma^2) noise.
NonparamDataset gen_nonparametric(const NonparamSpec& spec, std::size_t n_train,
                                  std::size_t n_test, Rng& rng);

struct LinearSpec {
  std::size_t d = 50;
  double label_sigma = 0.5;
  double comparison_sigma = 0.5;
};

struct LinearDataset {
  SampleSet train;  // unlabeled; supervision flows through oracles
  SampleSet test;
  std::vector<double> w_star;
  std::vector<double> truth_train;  // <w*, X>
  std::vector<double> truth_test;
  double label_sigma = 0.5;
  double comparison_sigma = 0.5;
};

/// X and w* from the standard normal; truth vectors are exact inner
/// products, and the sigmas configure the oracles a caller builds on top.
LinearDataset gen_linear(const LinearSpec& spec, std::size_t n_train,
                         std::size_t n_test, Rng& rng);

}  // namespace ordreg
