#include "ordreg/synthetic.hpp"

#include <cmath>

#include "ordreg/linalg.hpp"

namespace ordreg {

StandardizeStats compute_stats(std::span<const double> values) {
  if (values.empty()) throw DimensionError("compute_stats: empty input");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {mean, std::sqrt(var)};
}

std::vector<double> standardize(std::span<const double> values,
                                const StandardizeStats& stats) {
  // Constant references leave only accumulation noise in the variance;
  // treat those as degenerate too.
  if (!(stats.stddev > 1e-12 * (1.0 + std::abs(stats.mean))))
    throw DegenerateError("standardize: zero reference variance");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    out[i] = (values[i] - stats.mean) / stats.stddev;
  return out;
}

double nonparam_component(int which, double p, double x) {
  switch (which) {
    case 1:
      return p * x - 0.5;
    case 2:
      return p * x * x * x - 1.0 / 3.0;
    case 3:
      return -2.0 * std::sin(-p * x);
    case 4:
      return std::exp(-p * x) + std::exp(-1.0) - 1.0;
    default:
      throw ParameterError("nonparam_component: which must be in 1..4");
  }
}

namespace {

double additive_value(std::span<const double> x, std::span<const double> p) {
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    f += nonparam_component(static_cast<int>(i % 4) + 1, p[i], x[i]);
  return f;
}

}  // namespace

NonparamDataset gen_nonparametric(const NonparamSpec& spec, std::size_t n_train,
                                  std::size_t n_test, Rng& rng) {
  if (n_train < 1 || n_test < 1)
    throw DimensionError("gen_nonparametric: split sizes must be >= 1");
  if (spec.d < 4) throw ParameterError("gen_nonparametric: d must be >= 4");
  if (spec.p > 10.0) throw ParameterError("gen_nonparametric: p must be <= 10");

  std::vector<double> p(spec.d);
  if (spec.p >= 0.0) {
    for (auto& v : p) v = spec.p;
    if (spec.per_dimension_p)
      throw ParameterError("gen_nonparametric: per-dimension p needs a drawn p");
  } else if (spec.per_dimension_p) {
    for (auto& v : p) v = rng.uniform(0.0, 10.0);
  } else {
    const double shared = rng.uniform(0.0, 10.0);
    for (auto& v : p) v = shared;
  }

  NonparamDataset out{SampleSet(n_train, spec.d), SampleSet(n_test, spec.d),
                      {}, {}, {}, p};
  for (std::size_t i = 0; i < n_train; ++i)
    for (double& v : out.train.row(i)) v = rng.uniform();
  for (std::size_t i = 0; i < n_test; ++i)
    for (double& v : out.test.row(i)) v = rng.uniform();

  std::vector<double> raw_train(n_train), raw_test(n_test);
  for (std::size_t i = 0; i < n_train; ++i) raw_train[i] = additive_value(out.train.row(i), p);
  for (std::size_t i = 0; i < n_test; ++i) raw_test[i] = additive_value(out.test.row(i), p);

  out.stats = compute_stats(raw_train);
  out.truth_train = standardize(raw_train, out.stats);
  out.truth_test = standardize(raw_test, out.stats);

  for (std::size_t i = 0; i < n_train; ++i)
    out.train.set_label(i, out.truth_train[i] + rng.normal(0.0, spec.label_sigma));
  return out;
}

LinearDataset gen_linear(const LinearSpec& spec, std::size_t n_train, std::size_t n_test,
                         Rng& rng) {
  if (n_train < 1 || n_test < 1) throw DimensionError("gen_linear: split sizes must be >= 1");
  if (spec.d < 1) throw ParameterError("gen_linear: d must be >= 1");
  if (spec.label_sigma < 0 || spec.comparison_sigma < 0)
    throw ParameterError("gen_linear: sigmas must be >= 0");

  LinearDataset out{SampleSet(n_train, spec.d), SampleSet(n_test, spec.d),
                    std::vector<double>(spec.d), {}, {},
                    spec.label_sigma, spec.comparison_sigma};
  for (double& v : out.w_star) v = rng.normal();
  for (std::size_t i = 0; i < n_train; ++i)
    for (double& v : out.train.row(i)) v = rng.normal();
  for (std::size_t i = 0; i < n_test; ++i)
    for (double& v : out.test.row(i)) v = rng.normal();

  out.truth_train.resize(n_train);
  out.truth_test.resize(n_test);
  for (std::size_t i = 0; i < n_train; ++i) out.truth_train[i] = dot(out.w_star, out.train.row(i));
  for (std::size_t i = 0; i < n_test; ++i) out.truth_test[i] = dot(out.w_star, out.test.row(i));
  return out;
}

}  // namespace ordreg
