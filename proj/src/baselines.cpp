#include "ordreg/baselines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "ordreg/linalg.hpp"

namespace ordreg {

namespace {

// Labeled rows flattened out of a SampleSet.
struct Design {
  std::size_t m = 0, d = 0;
  std::vector<double> x;  // m x d
  std::vector<double> y;
};

Design labeled_design(const SampleSet& train) {
  Design dz;
  dz.d = train.dim();
  const auto idx = train.labeled_indices();
  dz.m = idx.size();
  dz.x.reserve(dz.m * dz.d);
  dz.y.reserve(dz.m);
  for (std::size_t i : idx) {
    const auto r = train.row(i);
    dz.x.insert(dz.x.end(), r.begin(), r.end());
    dz.y.push_back(train.label(i));
  }
  return dz;
}

}  // namespace

double LinearModel::predict(std::span<const double> x) const {
  if (x.size() != weights.size()) throw DimensionError("LinearModel::predict: dimension mismatch");
  return dot(weights, x) + intercept;
}

KnnModel fit_knn(const SampleSet& train, std::size_t k) {
  Design dz = labeled_design(train);
  if (dz.m == 0) throw BudgetError("fit_knn: no labeled rows");
  if (k < 1 || k > dz.m) throw ParameterError("fit_knn: need 1 <= k <= labeled count");
  KnnModel m;
  m.n_ = dz.m;
  m.d_ = dz.d;
  m.k_ = k;
  m.features_ = std::move(dz.x);
  m.labels_ = std::move(dz.y);
  return m;
}

double KnnModel::predict(std::span<const double> query) const {
  const auto nn = k_nearest(features_, n_, d_, query, k_);
  double s = 0.0;
  for (std::size_t i : nn) s += labels_[i];
  return s / static_cast<double>(nn.size());
}

LinearModel fit_ols(const SampleSet& train) {
  Design dz = labeled_design(train);
  if (dz.m == 0) throw BudgetError("fit_ols: no labeled rows");
  const std::size_t p = dz.d + 1;  // weights + intercept

  Eigen::MatrixXd xt(dz.m, p);
  Eigen::VectorXd y(dz.m);
  for (std::size_t i = 0; i < dz.m; ++i) {
    for (std::size_t j = 0; j < dz.d; ++j) xt(i, j) = dz.x[i * dz.d + j];
    xt(i, dz.d) = 1.0;
    y(i) = dz.y[i];
  }
  const Eigen::MatrixXd gram = xt.transpose() * xt;
  const Eigen::VectorXd rhs = xt.transpose() * y;

  LinearModel model;
  Eigen::VectorXd w;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  bool ok = llt.info() == Eigen::Success;
  if (ok) {
    w = llt.solve(rhs);
    const double resid = (gram * w - rhs).norm();
    ok = resid <= 1e-6 * (rhs.norm() + gram.norm() * w.norm() + 1.0);
  }
  if (!ok) {
    Eigen::MatrixXd jittered = gram;
    for (std::size_t j = 0; j < p; ++j) jittered(j, j) += 1e-8;
    w = Eigen::LLT<Eigen::MatrixXd>(jittered).solve(rhs);
    model.jitter_used = true;
  }
  model.weights.assign(w.data(), w.data() + dz.d);
  model.intercept = w(dz.d);
  return model;
}

LinearModel fit_lasso(const SampleSet& train, double lambda,
                      std::vector<double>* objective_history) {
  if (lambda < 0) throw ParameterError("fit_lasso: lambda must be >= 0");
  Design dz = labeled_design(train);
  if (dz.m == 0) throw BudgetError("fit_lasso: no labeled rows");
  const std::size_t m = dz.m, d = dz.d;
  const double dm = static_cast<double>(m);

  // Standardize columns (population variance) and center y.
  std::vector<double> mean(d, 0.0), scale(d, 1.0);
  std::vector<std::uint8_t> active(d, 1);
  for (std::size_t j = 0; j < d; ++j) {
    double mu = 0.0;
    for (std::size_t i = 0; i < m; ++i) mu += dz.x[i * d + j];
    mu /= dm;
    double var = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double c = dz.x[i * d + j] - mu;
      var += c * c;
    }
    var /= dm;
    mean[j] = mu;
    if (var > 1e-24) {
      scale[j] = std::sqrt(var);
    } else {
      active[j] = 0;  // constant column carries no signal
    }
  }
  const double ybar = std::accumulate(dz.y.begin(), dz.y.end(), 0.0) / dm;

  std::vector<double> xs(m * d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j)
      xs[i * d + j] = active[j] ? (dz.x[i * d + j] - mean[j]) / scale[j] : 0.0;
  std::vector<double> yc(m);
  for (std::size_t i = 0; i < m; ++i) yc[i] = dz.y[i] - ybar;

  std::vector<double> w(d, 0.0), resid = yc;
  const auto objective = [&]() {
    double sse = 0.0;
    for (double r : resid) sse += r * r;
    double l1 = 0.0;
    for (double v : w) l1 += std::abs(v);
    return sse / (2.0 * dm) + lambda * l1;
  };

  bool converged = false;
  const std::size_t max_sweeps = 10000;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_delta = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (!active[j]) continue;
      double rho = 0.0;
      for (std::size_t i = 0; i < m; ++i) rho += xs[i * d + j] * resid[i];
      rho = rho / dm + w[j];  // unit-variance columns make the curvature 1
      const double wj = std::abs(rho) <= lambda ? 0.0
                                                : (rho > 0 ? rho - lambda : rho + lambda);
      const double delta = wj - w[j];
      if (delta != 0.0) {
        for (std::size_t i = 0; i < m; ++i) resid[i] -= delta * xs[i * d + j];
        w[j] = wj;
      }
      max_delta = std::max(max_delta, std::abs(delta));
    }
    if (objective_history) objective_history->push_back(objective());
    if (max_delta < 1e-7) {
      converged = true;
      break;
    }
  }

  LinearModel model;
  model.converged = converged;
  model.weights.assign(d, 0.0);
  double dot_mean = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    if (!active[j]) continue;
    model.weights[j] = w[j] / scale[j];
    dot_mean += model.weights[j] * mean[j];
  }
  model.intercept = ybar - dot_mean;
  return model;
}

LinearModel fit_linear_svr(const SampleSet& train, const LinearSvrOptions& options,
                           Rng& rng) {
  if (!(options.C > 0)) throw ParameterError("fit_linear_svr: C must be > 0");
  if (options.epsilon < 0) throw ParameterError("fit_linear_svr: epsilon must be >= 0");
  Design dz = labeled_design(train);
  if (dz.m == 0) throw BudgetError("fit_linear_svr: no labeled rows");
  const std::size_t m = dz.m, d = dz.d;

  std::vector<double> w(d, 0.0);
  double b = 0.0;
  std::vector<std::size_t> sched(m);
  std::iota(sched.begin(), sched.end(), std::size_t{0});
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    rng.shuffle(sched);
    for (std::size_t i : sched) {
      const double eta = options.step0 / std::sqrt(static_cast<double>(++t));
      const std::span<const double> x{dz.x.data() + i * d, d};
      const double resid = dz.y[i] - dot(w, x) - b;
      // Subgradient of F/m with F = (1/2)||w||^2 + C sum loss_i.
      const double shrink = 1.0 - eta / static_cast<double>(m);
      for (double& wj : w) wj *= shrink;
      if (std::abs(resid) > options.epsilon) {
        const double g = resid > 0 ? 1.0 : -1.0;
        for (std::size_t j = 0; j < d; ++j) w[j] += eta * options.C * g * x[j];
        b += eta * options.C * g;
      }
    }
  }

  LinearModel model;
  model.weights = std::move(w);
  model.intercept = b;
  return model;
}

}  // namespace ordreg
