// Python bindings for the main operations: metrics, isotonic regression,
// ranking-regression, comparison aggregation, the linear comparison
// estimator, baselines, and the synthetic generators.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ordreg/baselines.hpp"
#include "ordreg/clr.hpp"
#include "ordreg/isotonic.hpp"
#include "ordreg/metrics.hpp"
#include "ordreg/oracles.hpp"
#include "ordreg/r2.hpp"
#include "ordreg/rank_aggregate.hpp"
#include "ordreg/synthetic.hpp"

namespace py = pybind11;
using namespace ordreg;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const DoubleArray& a) {
  if (a.ndim() != 1) throw DimensionError("expected a 1-D array");
  return {a.data(), a.data() + a.shape(0)};
}

SampleSet to_samples(const DoubleArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-D array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  const auto d = static_cast<std::size_t>(a.shape(1));
  return SampleSet(n, d, {a.data(), a.data() + n * d});
}

SampleSet to_labeled(const DoubleArray& x, const DoubleArray& y) {
  SampleSet s = to_samples(x);
  const auto labels = to_vector(y);
  if (labels.size() != s.size()) throw DimensionError("label length != row count");
  for (std::size_t i = 0; i < s.size(); ++i) s.set_label(i, labels[i]);
  return s;
}

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> to_matrix(const std::vector<double>& flat, std::size_t n,
                              std::size_t d) {
  py::array_t<double> out({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(d)});
  std::copy(flat.begin(), flat.end(), out.mutable_data());
  return out;
}

ComparisonSet to_comparisons(const std::vector<std::tuple<std::size_t, std::size_t, int>>& t) {
  ComparisonSet c;
  for (const auto& [i, j, z] : t) c.add(i, j, z);
  return c;
}

ComparisonOracleConfig oracle_from(const std::string& model, double lam, double sigma) {
  if (model == "flip") return ComparisonOracleConfig::flip(lam);
  if (model == "noisy-value") return ComparisonOracleConfig::noisy_value(sigma);
  throw ParameterError("oracle model must be 'flip' or 'noisy-value'");
}

}  // namespace

PYBIND11_MODULE(_ordreg, m) {
  m.doc() = "Regression from a few labels plus rankings or pairwise comparisons";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<InvalidValueError>(m, "InvalidValueError", PyExc_ValueError);
  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);

  m.def(
      "kendall_tau",
      [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        const auto r = kendall_tau(Ranking(a), Ranking(b));
        return py::make_tuple(r.discordant_ordered, r.nu);
      },
      py::arg("a"), py::arg("b"),
      "Ordered discordant-pair count and nu = count / n^2 between two rank "
      "orders (position -> index).");

  m.def(
      "ranking_from_values",
      [](const DoubleArray& values) { return ranking_from_values(to_vector(values)).order(); },
      py::arg("values"));

  m.def(
      "mse",
      [](const DoubleArray& pred, const DoubleArray& truth) {
        return mse_eval(to_vector(pred), to_vector(truth));
      },
      py::arg("pred"), py::arg("truth"));

  m.def(
      "sample_labeled_subset",
      [](std::size_t n, std::size_t m, std::uint64_t seed) {
        Rng rng(seed);
        return sample_labeled_subset(n, m, rng);
      },
      py::arg("n"), py::arg("m"), py::arg("seed"));

  m.def(
      "fit_bounded_isotonic",
      [](const DoubleArray& values, double bound) {
        const auto fit = fit_bounded_isotonic(to_vector(values), bound);
        return py::make_tuple(to_array(fit.fitted), fit.sse);
      },
      py::arg("values"), py::arg("bound"),
      "Least-squares non-decreasing fit clamped to [-bound, bound]; returns "
      "(fitted, sse).");

  m.def(
      "simulate_comparisons",
      [](const DoubleArray& truth,
         const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
         const std::string& model, double lam, double sigma, std::uint64_t seed) {
        Rng rng(seed);
        const auto comps = simulate_comparisons(to_vector(truth), pairs,
                                                oracle_from(model, lam, sigma), rng);
        std::vector<std::tuple<std::size_t, std::size_t, int>> out;
        for (const auto& c : comps) out.emplace_back(c.i, c.j, c.z);
        return out;
      },
      py::arg("truth"), py::arg("pairs"), py::arg("model") = "noisy-value",
      py::arg("lam") = 0.25, py::arg("sigma") = 0.5, py::arg("seed") = 0);

  m.def(
      "sample_pairs",
      [](std::size_t n, std::size_t count, std::uint64_t seed) {
        Rng rng(seed);
        return sample_pairs(n, count, rng);
      },
      py::arg("n"), py::arg("count"), py::arg("seed"));

  m.def(
      "borda_scores",
      [](const std::vector<std::tuple<std::size_t, std::size_t, int>>& comps,
         std::size_t n) { return to_array(borda_scores(to_comparisons(comps), n).scores); },
      py::arg("comparisons"), py::arg("n"));

  m.def(
      "knn_borda_scores",
      [](const DoubleArray& base, const DoubleArray& features, std::size_t k) {
        Scorer s;
        s.kind = ScorerKind::borda;
        s.scores = to_vector(base);
        return to_array(knn_borda_scores(s, to_samples(features), k).scores);
      },
      py::arg("base_scores"), py::arg("features"), py::arg("k"));

  m.def(
      "ranksvm_scores",
      [](const DoubleArray& features,
         const std::vector<std::tuple<std::size_t, std::size_t, int>>& comps,
         double bandwidth, double reg, std::size_t epochs, std::uint64_t seed) {
        Rng rng(seed);
        return to_array(fit_ranksvm_scorer(to_samples(features), to_comparisons(comps),
                                           bandwidth, reg, epochs, rng)
                            .scores);
      },
      py::arg("features"), py::arg("comparisons"), py::arg("bandwidth") = 1.0,
      py::arg("reg") = 1e-3, py::arg("epochs") = 50, py::arg("seed") = 0);

  m.def(
      "scores_to_ranking",
      [](const DoubleArray& scores) {
        Scorer s;
        s.kind = ScorerKind::borda;
        s.scores = to_vector(scores);
        return scores_to_ranking(s).order();
      },
      py::arg("scores"));

  py::class_<R2Model>(m, "R2Model")
      .def(py::init([](const DoubleArray& features, const std::vector<std::size_t>& labeled,
                       const DoubleArray& labels, const std::vector<std::size_t>& order,
                       std::size_t k, double bound) {
             ModelBounds bounds;
             bounds.M = bound;
             return fit_r2(to_samples(features), labeled, to_vector(labels), Ranking(order),
                           k, bounds);
           }),
           py::arg("features"), py::arg("labeled_indices"), py::arg("labels"),
           py::arg("ranking"), py::arg("k") = 5, py::arg("bound") = 1e6)
      .def("predict",
           [](const R2Model& self, const DoubleArray& x) {
             if (x.ndim() == 1) return to_array({self.predict(to_vector(x))});
             const SampleSet queries = to_samples(x);
             std::vector<double> out(queries.size());
             for (std::size_t i = 0; i < queries.size(); ++i)
               out[i] = self.predict(queries.row(i));
             return to_array(out);
           })
      .def_property_readonly("imputed",
                             [](const R2Model& self) { return to_array(self.imputed()); })
      .def_property_readonly("k", &R2Model::k)
      .def("save", &R2Model::save)
      .def_static("load", &R2Model::load);

  py::class_<CLRModel>(m, "CLRModel")
      .def_property_readonly("direction",
                             [](const CLRModel& self) { return to_array(self.direction); })
      .def_readonly("scale", &CLRModel::scale)
      .def("predict",
           [](const CLRModel& self, const DoubleArray& x) {
             if (x.ndim() == 1) return to_array({self.predict(to_vector(x))});
             const SampleSet queries = to_samples(x);
             std::vector<double> out(queries.size());
             for (std::size_t i = 0; i < queries.size(); ++i)
               out[i] = self.predict(queries.row(i));
             return to_array(out);
           })
      .def("save", &CLRModel::save)
      .def_static("load", &CLRModel::load);

  m.def(
      "fit_clr",
      [](const DoubleArray& features, const DoubleArray& truth, std::size_t comparisons,
         std::size_t labels, const std::string& mode, bool augment, double label_sigma,
         double comparison_sigma, std::uint64_t seed) {
        const SampleSet universe = to_samples(features);
        ValueComparisonOracle cmp(to_vector(truth),
                                  ComparisonOracleConfig::noisy_value(comparison_sigma),
                                  Rng(mix_seed({seed, 1})));
        GaussianLabelOracle lab(to_vector(truth), label_sigma, Rng(mix_seed({seed, 2})));
        ClrConfig cfg;
        cfg.comparison_budget = comparisons;
        cfg.label_budget = labels;
        cfg.augment = augment;
        if (mode == "active") {
          cfg.mode = DirectionMode::active;
        } else if (mode == "passive") {
          cfg.mode = DirectionMode::passive;
        } else {
          throw ParameterError("mode must be 'passive' or 'active'");
        }
        Rng rng(mix_seed({seed, 3}));
        return fit_clr(universe, cmp, lab, cfg, rng);
      },
      py::arg("features"), py::arg("truth"), py::arg("comparisons"), py::arg("labels"),
      py::arg("mode") = "passive", py::arg("augment") = false, py::arg("label_sigma") = 0.5,
      py::arg("comparison_sigma") = 0.5, py::arg("seed") = 0,
      "Fit the comparison-based linear estimator against simulated oracles "
      "bound to the given true values.");

  py::class_<KnnModel>(m, "KnnModel")
      .def("predict", [](const KnnModel& self, const DoubleArray& x) {
        return self.predict(to_vector(x));
      });

  m.def(
      "fit_knn",
      [](const DoubleArray& x, const DoubleArray& y, std::size_t k) {
        return fit_knn(to_labeled(x, y), k);
      },
      py::arg("features"), py::arg("labels"), py::arg("k"));

  py::class_<LinearModel>(m, "LinearModel")
      .def_property_readonly("weights",
                             [](const LinearModel& self) { return to_array(self.weights); })
      .def_readonly("intercept", &LinearModel::intercept)
      .def_readonly("jitter_used", &LinearModel::jitter_used)
      .def_readonly("converged", &LinearModel::converged)
      .def("predict", [](const LinearModel& self, const DoubleArray& x) {
        return self.predict(to_vector(x));
      });

  m.def(
      "fit_ols",
      [](const DoubleArray& x, const DoubleArray& y) { return fit_ols(to_labeled(x, y)); },
      py::arg("features"), py::arg("labels"));

  m.def(
      "fit_lasso",
      [](const DoubleArray& x, const DoubleArray& y, double lambda) {
        return fit_lasso(to_labeled(x, y), lambda);
      },
      py::arg("features"), py::arg("labels"), py::arg("lam"));

  m.def(
      "fit_linear_svr",
      [](const DoubleArray& x, const DoubleArray& y, double C, double epsilon,
         std::size_t epochs, std::uint64_t seed) {
        LinearSvrOptions opt;
        opt.C = C;
        opt.epsilon = epsilon;
        opt.epochs = epochs;
        Rng rng(seed);
        return fit_linear_svr(to_labeled(x, y), opt, rng);
      },
      py::arg("features"), py::arg("labels"), py::arg("C") = 10.0,
      py::arg("epsilon") = 0.01, py::arg("epochs") = 200, py::arg("seed") = 0);

  m.def(
      "gen_nonparametric",
      [](std::size_t n_train, std::size_t n_test, std::uint64_t seed, std::size_t d,
         double p, double label_sigma) {
        NonparamSpec spec;
        spec.d = d;
        spec.p = p;
        spec.label_sigma = label_sigma;
        Rng rng(seed);
        const auto data = gen_nonparametric(spec, n_train, n_test, rng);
        py::dict out;
        DoubleArray train({static_cast<py::ssize_t>(n_train), static_cast<py::ssize_t>(d)});
        std::copy(data.train.features().begin(), data.train.features().end(),
                  train.mutable_data());
        DoubleArray test({static_cast<py::ssize_t>(n_test), static_cast<py::ssize_t>(d)});
        std::copy(data.test.features().begin(), data.test.features().end(),
                  test.mutable_data());
        std::vector<double> labels(n_train);
        for (std::size_t i = 0; i < n_train; ++i) labels[i] = data.train.label(i);
        out["train"] = train;
        out["test"] = test;
        out["labels"] = to_array(labels);
        out["truth_train"] = to_array(data.truth_train);
        out["truth_test"] = to_array(data.truth_test);
        out["p"] = data.p.front();
        return out;
      },
      py::arg("n_train"), py::arg("n_test"), py::arg("seed"), py::arg("d") = 8,
      py::arg("p") = -1.0, py::arg("label_sigma") = 0.5);

  m.def(
      "gen_linear",
      [](std::size_t n_train, std::size_t n_test, std::uint64_t seed, std::size_t d) {
        LinearSpec spec;
        spec.d = d;
        Rng rng(seed);
        const auto data = gen_linear(spec, n_train, n_test, rng);
        py::dict out;
        DoubleArray train({static_cast<py::ssize_t>(n_train), static_cast<py::ssize_t>(d)});
        std::copy(data.train.features().begin(), data.train.features().end(),
                  train.mutable_data());
        DoubleArray test({static_cast<py::ssize_t>(n_test), static_cast<py::ssize_t>(d)});
        std::copy(data.test.features().begin(), data.test.features().end(),
                  test.mutable_data());
        out["train"] = train;
        out["test"] = test;
        out["w_star"] = to_array(data.w_star);
        out["truth_train"] = to_array(data.truth_train);
        out["truth_test"] = to_array(data.truth_test);
        return out;
      },
      py::arg("n_train"), py::arg("n_test"), py::arg("seed"), py::arg("d") = 50);
}
