#pragma once

#include <span>
#include <vector>

#include "ordreg/rng.hpp"
#include "ordreg/types.hpp"

namespace ordreg {

struct LinearModel {
  std::vector<double> weights;
  double intercept = 0.0;
  bool jitter_used = false;  // ridge fallback fired in fit_ols
  bool converged = true;     // coordinate descent reached tolerance in fit_lasso

  double predict(std::span<const double> x) const;
};

/// k-NN regressor over the labeled rows of a SampleSet.
class KnnModel {
 public:
  KnnModel() = default;
  double predict(std::span<const double> query) const;
  std::size_t k() const { return k_; }

  friend KnnModel fit_knn(const SampleSet& train, std::size_t k);

 private:
  std::size_t n_ = 0, d_ = 0, k_ = 1;
  std::vector<double> features_;
  std::vector<double> labels_;
};

KnnModel fit_knn(const SampleSet& train, std::size_t k);

/// Least squares with intercept via normal equations; a 1e-8 ridge is added
/// when the Gram matrix is singular and the fallback is reported on the
/// model.
LinearModel fit_ols(const SampleSet& train);

/// Lasso by cyclic coordinate descent on standardized features, objective
/// (1/2m) sum r^2 + lambda ||w||_1. Stops when the largest coordinate change
/// drops below 1e-7 or after 1e4 sweeps; the weights are mapped back to the
/// raw feature scale. Pass `objective_history` to record the objective after
/// each sweep.
LinearModel fit_lasso(const SampleSet& train, double lambda,
                      std::vector<double>* objective_history = nullptr);

struct LinearSvrOptions {
  double C = 10.0;
  double epsilon = 0.01;
  std::size_t epochs = 200;
  double step0 = 0.05;
};

/// Epsilon-insensitive linear SVR by stochastic subgradient on
/// (1/2)||w||^2 + C sum max(0, |y - <w,x> - b| - epsilon). Indices are
/// shuffled once per epoch; the step at update t is step0/sqrt(t).
LinearModel fit_linear_svr(const SampleSet& train, const LinearSvrOptions& options,
                           Rng& rng);

}  // namespace ordreg
