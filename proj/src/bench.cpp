#include "ordreg/bench.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "ordreg/baselines.hpp"
#include "ordreg/clr.hpp"
#include "ordreg/metrics.hpp"
#include "ordreg/oracles.hpp"
#include "ordreg/r2.hpp"
#include "ordreg/rank_aggregate.hpp"

namespace ordreg::bench {

BudgetPlan allocate_budget(double cost_ratio, double total, std::size_t labels) {
  if (cost_ratio < 1.0) throw ParameterError("allocate_budget: cost ratio must be >= 1");
  const double spent = cost_ratio * static_cast<double>(labels);
  if (spent > total + 1e-9) throw BudgetError("allocate_budget: labels exceed the budget");
  BudgetPlan plan;
  plan.cost_ratio = cost_ratio;
  plan.total = total;
  plan.labels = labels;
  plan.comparisons = static_cast<std::size_t>(std::floor(total - spent + 1e-9));
  return plan;
}

namespace {

struct MethodSpec {
  enum class Kind { knn, knn_truth, r2, r2_cv, clr, ols, lasso, linear_svr };
  Kind kind;
  std::size_t k = 5;           // knn / r2 neighbor count
  DirectionMode mode = DirectionMode::passive;
  bool augment = false;
  std::string name;
};

bool parse_uint_prefix(const std::string& s, std::size_t& value, std::string& rest) {
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == 0) return false;
  value = std::stoull(s.substr(0, i));
  rest = s.substr(i);
  return true;
}

MethodSpec parse_method(const std::string& name) {
  MethodSpec spec;
  spec.name = name;
  std::size_t k = 0;
  std::string rest;
  if (name == "r2-cv") {
    spec.kind = MethodSpec::Kind::r2_cv;
  } else if (name == "ols") {
    spec.kind = MethodSpec::Kind::ols;
  } else if (name == "lasso") {
    spec.kind = MethodSpec::Kind::lasso;
  } else if (name == "linear-svr") {
    spec.kind = MethodSpec::Kind::linear_svr;
  } else if (name == "clr-passive" || name == "clr-active" ||
             name == "clr-passive-aug" || name == "clr-active-aug") {
    spec.kind = MethodSpec::Kind::clr;
    spec.mode = name.find("active") != std::string::npos ? DirectionMode::active
                                                         : DirectionMode::passive;
    spec.augment = name.size() > 4 && name.substr(name.size() - 4) == "-aug";
  } else if (name.rfind("r2-", 0) == 0 && parse_uint_prefix(name.substr(3), k, rest) &&
             rest == "-nn") {
    spec.kind = MethodSpec::Kind::r2;
    spec.k = k;
  } else if (parse_uint_prefix(name, k, rest) && rest == "-nn") {
    spec.kind = MethodSpec::Kind::knn;
    spec.k = k;
  } else if (parse_uint_prefix(name, k, rest) && rest == "-nn-truth") {
    spec.kind = MethodSpec::Kind::knn_truth;
    spec.k = k;
  } else {
    throw ConfigError("unknown method name: " + name);
  }
  return spec;
}

std::uint64_t hash_string(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ComparisonOracleConfig oracle_config(const ExperimentConfig& cfg) {
  if (cfg.oracle == "flip") return ComparisonOracleConfig::flip(cfg.oracle_lambda);
  if (cfg.oracle == "noisy-value")
    return ComparisonOracleConfig::noisy_value(cfg.oracle_sigma);
  throw ConfigError("unknown oracle model: " + cfg.oracle);
}

SampleSet select_labeled(const SampleSet& data, std::span<const std::size_t> idx,
                         std::span<const double> labels) {
  SampleSet out(idx.size(), data.dim());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const auto src = data.row(idx[a]);
    std::copy(src.begin(), src.end(), out.row(a).begin());
    out.set_label(a, labels[a]);
  }
  return out;
}

double eval_mse(const std::function<double(std::span<const double>)>& predict,
                const SampleSet& test, std::span<const double> truth) {
  std::vector<double> pred(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) pred[i] = predict(test.row(i));
  return mse_eval(pred, truth);
}

// Validation-driven lambda for the lasso: log grid below the smallest
// all-zero lambda, scored on a 25% holdout, winner refit on everything.
LinearModel fit_lasso_validated(const SampleSet& labeled, Rng& rng) {
  const auto idx = labeled.labeled_indices();
  const std::size_t m = idx.size();
  if (m < 4) return fit_lasso(labeled, 1e-3);

  std::vector<std::size_t> shuffled(idx);
  rng.shuffle(shuffled);
  const std::size_t val_count = std::max<std::size_t>(1, m / 4);
  std::vector<std::size_t> val(shuffled.begin(), shuffled.begin() + val_count);
  std::vector<std::size_t> tr(shuffled.begin() + val_count, shuffled.end());

  std::vector<double> tr_labels, val_labels;
  for (std::size_t i : tr) tr_labels.push_back(labeled.label(i));
  for (std::size_t i : val) val_labels.push_back(labeled.label(i));
  const SampleSet train_split = select_labeled(labeled, tr, tr_labels);
  const SampleSet val_split = select_labeled(labeled, val, val_labels);

  // lambda_max: largest mean absolute correlation on the standardized scale.
  double lambda_max = 0.0;
  {
    const auto stats_y = compute_stats(tr_labels);
    for (std::size_t j = 0; j < train_split.dim(); ++j) {
      std::vector<double> col(train_split.size());
      for (std::size_t i = 0; i < train_split.size(); ++i) col[i] = train_split.at(i, j);
      const auto st = compute_stats(col);
      if (!(st.stddev > 0)) continue;
      double acc = 0.0;
      for (std::size_t i = 0; i < train_split.size(); ++i)
        acc += (col[i] - st.mean) / st.stddev * (tr_labels[i] - stats_y.mean);
      lambda_max = std::max(lambda_max, std::abs(acc) / static_cast<double>(train_split.size()));
    }
    if (!(lambda_max > 0)) lambda_max = 1.0;
  }

  double best_lambda = lambda_max;
  double best_score = std::numeric_limits<double>::infinity();
  for (double frac : {1.0, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001}) {
    const double lambda = lambda_max * frac;
    const LinearModel candidate = fit_lasso(train_split, lambda);
    double sse = 0.0;
    for (std::size_t i = 0; i < val_split.size(); ++i) {
      const double r = candidate.predict(val_split.row(i)) - val_split.label(i);
      sse += r * r;
    }
    if (sse < best_score) {
      best_score = sse;
      best_lambda = lambda;
    }
  }
  return fit_lasso(labeled, best_lambda);
}

LinearModel fit_svr_validated(const SampleSet& labeled, Rng& rng) {
  const auto idx = labeled.labeled_indices();
  const std::size_t m = idx.size();
  LinearSvrOptions base;
  if (m < 4) {
    Rng r = rng.child(1);
    return fit_linear_svr(labeled, base, r);
  }
  std::vector<std::size_t> shuffled(idx);
  rng.shuffle(shuffled);
  const std::size_t val_count = std::max<std::size_t>(1, m / 4);
  std::vector<std::size_t> val(shuffled.begin(), shuffled.begin() + val_count);
  std::vector<std::size_t> tr(shuffled.begin() + val_count, shuffled.end());
  std::vector<double> tr_labels, val_labels;
  for (std::size_t i : tr) tr_labels.push_back(labeled.label(i));
  for (std::size_t i : val) val_labels.push_back(labeled.label(i));
  const SampleSet train_split = select_labeled(labeled, tr, tr_labels);
  const SampleSet val_split = select_labeled(labeled, val, val_labels);

  LinearSvrOptions best = base;
  double best_score = std::numeric_limits<double>::infinity();
  for (double C : {0.1, 1.0, 10.0}) {
    for (double eps : {0.01, 0.1}) {
      LinearSvrOptions opt = base;
      opt.C = C;
      opt.epsilon = eps;
      Rng r = rng.child(hash_string("svr-grid") + static_cast<std::uint64_t>(C * 100) +
                        static_cast<std::uint64_t>(eps * 1000));
      const LinearModel candidate = fit_linear_svr(train_split, opt, r);
      double sse = 0.0;
      for (std::size_t i = 0; i < val_split.size(); ++i) {
        const double d = candidate.predict(val_split.row(i)) - val_split.label(i);
        sse += d * d;
      }
      if (sse < best_score) {
        best_score = sse;
        best = opt;
      }
    }
  }
  Rng r = rng.child(hash_string("svr-final"));
  return fit_linear_svr(labeled, best, r);
}

struct TrialContext {
  const ExperimentConfig& cfg;
  std::uint64_t trial_seed;
};

// Ordinal supervision for the nonparametric path: a ranking plus the number
// of comparison judgments it consumed.
struct OrdinalSupervision {
  Ranking ranking;
  std::size_t comparisons_used = 0;
};

OrdinalSupervision make_ranking(const TrialContext& ctx, const NonparamDataset& data) {
  const auto& cfg = ctx.cfg;
  Rng rng(mix_seed({ctx.trial_seed, hash_string("ordinal")}));
  if (cfg.ranking == "perfect") {
    return {ranking_from_values(data.truth_train), 0};
  }
  if (cfg.ranking == "noisy-values") {
    std::vector<double> noisy(data.truth_train);
    for (double& v : noisy) v += rng.normal(0.0, cfg.ranking_sigma);
    return {ranking_from_values(noisy), 0};
  }
  if (cfg.ranking == "ranksvm" || cfg.ranking == "borda" || cfg.ranking == "knn-borda") {
    if (cfg.comparisons == 0)
      throw ConfigError("comparison-based ranking needs comparisons > 0");
    const auto pairs = sample_pairs(data.train.size(), cfg.comparisons, rng);
    const auto comps =
        simulate_comparisons(data.truth_train, pairs, oracle_config(cfg), rng);
    if (cfg.ranking == "ranksvm") {
      Rng fit_rng = rng.child(hash_string("ranksvm"));
      const Scorer s = fit_ranksvm_scorer(data.train, comps, cfg.ranksvm_bandwidth,
                                          cfg.ranksvm_reg, cfg.ranksvm_epochs, fit_rng);
      return {scores_to_ranking(s), comps.size()};
    }
    const Scorer base = borda_scores(comps, data.train.size());
    if (cfg.ranking == "borda") return {scores_to_ranking(base), comps.size()};
    const std::size_t k = std::min(cfg.knn_borda_k, data.train.size());
    return {scores_to_ranking(knn_borda_scores(base, data.train, k)), comps.size()};
  }
  throw ConfigError("unknown ranking source: " + cfg.ranking);
}

void run_nonparam_trial(const TrialContext& ctx, std::size_t cell_m, std::size_t trial,
                        const std::string& axis, double axis_value,
                        const std::vector<MethodSpec>& methods,
                        std::vector<ResultRecord>& out) {
  const auto& cfg = ctx.cfg;
  NonparamSpec spec;
  spec.d = cfg.nonparam_d;
  spec.p = cfg.nonparam_p;
  spec.label_sigma = cfg.label_sigma;

  Rng data_rng(mix_seed({ctx.trial_seed, hash_string("data")}));
  const NonparamDataset data = gen_nonparametric(spec, cfg.train_size, cfg.test_size, data_rng);

  if (cell_m > cfg.train_size) throw ConfigError("label budget exceeds train size");
  Rng pick_rng(mix_seed({ctx.trial_seed, hash_string("labels")}));
  const auto labeled_idx = sample_labeled_subset(cfg.train_size, cell_m, pick_rng);
  std::vector<double> noisy_labels, true_labels;
  for (std::size_t i : labeled_idx) {
    noisy_labels.push_back(data.train.label(i));
    true_labels.push_back(data.truth_train[i]);
  }
  const std::size_t labels_used = labeled_idx.size();
  if (labels_used > cell_m) throw Error("budget accounting violation: labels");

  const bool wants_ranking = std::any_of(methods.begin(), methods.end(), [](const auto& m) {
    return m.kind == MethodSpec::Kind::r2 || m.kind == MethodSpec::Kind::r2_cv;
  });
  std::size_t ordinal_n = cfg.comparisons > 0 ? cfg.comparisons : cfg.train_size;
  OrdinalSupervision ordinal{Ranking::identity(1), 0};
  if (wants_ranking) {
    ordinal = make_ranking(ctx, data);
    if (ordinal.comparisons_used > ordinal_n)
      throw Error("budget accounting violation: comparisons");
  }

  const ModelBounds bounds{cfg.bound_M, 1.0, 1.0};
  for (const auto& method : methods) {
    const auto t0 = std::chrono::steady_clock::now();
    double mse = 0.0;
    Rng method_rng(mix_seed({ctx.trial_seed, hash_string("method"), hash_string(method.name)}));
    switch (method.kind) {
      case MethodSpec::Kind::knn: {
        const auto model = fit_knn(select_labeled(data.train, labeled_idx, noisy_labels),
                                   std::min(method.k, labels_used));
        mse = eval_mse([&](auto q) { return model.predict(q); }, data.test, data.truth_test);
        break;
      }
      case MethodSpec::Kind::knn_truth: {
        const auto model = fit_knn(select_labeled(data.train, labeled_idx, true_labels),
                                   std::min(method.k, labels_used));
        mse = eval_mse([&](auto q) { return model.predict(q); }, data.test, data.truth_test);
        break;
      }
      case MethodSpec::Kind::r2: {
        const auto model = fit_r2(data.train, labeled_idx, noisy_labels, ordinal.ranking,
                                  method.k, bounds);
        mse = eval_mse([&](auto q) { return model.predict(q); }, data.test, data.truth_test);
        break;
      }
      case MethodSpec::Kind::r2_cv: {
        // Theorem-4 style selection: hold out half the labels, fit the
        // candidates on the rest, keep the validation winner.
        std::vector<std::size_t> shuffled(labeled_idx);
        method_rng.shuffle(shuffled);
        const std::size_t half = std::max<std::size_t>(1, shuffled.size() / 2);
        std::vector<std::size_t> val(shuffled.begin(), shuffled.begin() + half);
        std::vector<std::size_t> tr(shuffled.begin() + half, shuffled.end());
        if (tr.empty()) tr = val;
        std::vector<double> tr_labels, val_labels;
        for (std::size_t i : tr) tr_labels.push_back(data.train.label(i));
        for (std::size_t i : val) val_labels.push_back(data.train.label(i));

        std::vector<Candidate> candidates;
        std::vector<R2Model> r2_models;
        std::vector<KnnModel> knn_models;
        for (std::size_t k : {std::size_t{1}, std::size_t{5}}) {
          r2_models.push_back(
              fit_r2(data.train, tr, tr_labels, ordinal.ranking, k, bounds));
        }
        const SampleSet tr_set = select_labeled(data.train, tr, tr_labels);
        for (std::size_t k : {std::size_t{1}, std::size_t{3}, std::size_t{5}, std::size_t{9}})
          if (k <= tr.size()) knn_models.push_back(fit_knn(tr_set, k));
        for (auto& m : r2_models)
          candidates.push_back({"r2", [&m](auto q) { return m.predict(q); }});
        for (auto& m : knn_models)
          candidates.push_back({"knn", [&m](auto q) { return m.predict(q); }});

        const SampleSet val_set = select_labeled(data.train, val, val_labels);
        const auto selection = cv_select(candidates, val_set, bounds.M);
        const auto& chosen = candidates[selection.chosen];
        mse = eval_mse(chosen.predict, data.test, data.truth_test);
        break;
      }
      default:
        throw ConfigError("method " + method.name + " needs the linear generator");
    }
    const auto t1 = std::chrono::steady_clock::now();
    ResultRecord rec;
    rec.experiment = cfg.id;
    rec.method = method.name;
    rec.m = cell_m;
    rec.n = (method.kind == MethodSpec::Kind::r2 || method.kind == MethodSpec::Kind::r2_cv)
                ? ordinal_n
                : 0;
    rec.cost_ratio = cfg.cost_ratio;
    rec.axis = axis;
    rec.axis_value = axis_value;
    rec.trial = trial;
    rec.seed = ctx.trial_seed;
    rec.mse = mse;
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.push_back(std::move(rec));
  }
}

void run_linear_trial(const TrialContext& ctx, std::size_t clr_m, std::size_t clr_n,
                      std::size_t label_only_m, std::size_t trial, const std::string& axis,
                      double axis_value, const std::vector<MethodSpec>& methods,
                      std::vector<ResultRecord>& out) {
  const auto& cfg = ctx.cfg;
  LinearSpec spec;
  spec.d = cfg.linear_d;
  spec.label_sigma = cfg.label_sigma;
  spec.comparison_sigma = cfg.oracle_sigma;

  const bool wants_clr = std::any_of(methods.begin(), methods.end(), [](const auto& m) {
    return m.kind == MethodSpec::Kind::clr;
  });
  std::size_t train_size = cfg.train_size;
  if (wants_clr) train_size = std::max(train_size, 2 * clr_n);

  Rng data_rng(mix_seed({ctx.trial_seed, hash_string("data")}));
  const LinearDataset data = gen_linear(spec, train_size, cfg.test_size, data_rng);

  // Label-only methods share one labeled draw, mirroring the protocol where
  // every baseline sees the same random labeled set.
  Rng pick_rng(mix_seed({ctx.trial_seed, hash_string("labels")}));
  std::vector<std::size_t> shared_idx;
  std::vector<double> shared_labels;
  if (label_only_m > 0) {
    shared_idx = sample_labeled_subset(train_size, label_only_m, pick_rng);
    for (std::size_t i : shared_idx)
      shared_labels.push_back(data.truth_train[i] + pick_rng.normal(0.0, cfg.label_sigma));
  }

  for (const auto& method : methods) {
    const auto t0 = std::chrono::steady_clock::now();
    double mse = 0.0;
    std::size_t rec_m = label_only_m, rec_n = 0;
    Rng method_rng(mix_seed({ctx.trial_seed, hash_string("method"), hash_string(method.name)}));
    switch (method.kind) {
      case MethodSpec::Kind::clr: {
        ValueComparisonOracle cmp(data.truth_train, oracle_config(cfg),
                                  method_rng.child(hash_string("cmp")));
        GaussianLabelOracle lab(data.truth_train, cfg.label_sigma,
                                method_rng.child(hash_string("lab")));
        ClrConfig clr_cfg;
        clr_cfg.comparison_budget = clr_n;
        clr_cfg.label_budget = clr_m;
        clr_cfg.mode = method.mode;
        clr_cfg.augment = method.augment;
        clr_cfg.active.rounds = cfg.active_rounds;
        const CLRModel model = fit_clr(data.train, cmp, lab, clr_cfg, method_rng);
        if (cmp.calls() > clr_n || lab.calls() > clr_m)
          throw Error("budget accounting violation: clr oracle calls");
        mse = eval_mse([&](auto q) { return model.predict(q); }, data.test, data.truth_test);
        rec_m = clr_m;
        rec_n = cmp.calls();
        break;
      }
      case MethodSpec::Kind::ols: {
        const auto model = fit_ols(select_labeled(data.train, shared_idx, shared_labels));
        mse = eval_mse([&](auto q) { return model.predict(q); }, data.test, data.truth_test);
        break;
      }
      case MethodSpec::Kind::lasso: {
        const auto model = fit_lasso_validated(
            select_labeled(data.train, shared_idx, shared_labels), method_rng);
        mse = eval_mse([&](auto q) { return model.predict(q); }, data.test, data.truth_test);
        break;
      }
      case MethodSpec::Kind::linear_svr: {
        const auto model = fit_svr_validated(
            select_labeled(data.train, shared_idx, shared_labels), method_rng);
        mse = eval_mse([&](auto q) { return model.predict(q); }, data.test, data.truth_test);
        break;
      }
      case MethodSpec::Kind::knn: {
        const auto model = fit_knn(select_labeled(data.train, shared_idx, shared_labels),
                                   std::min(method.k, shared_idx.size()));
        mse = eval_mse([&](auto q) { return model.predict(q); }, data.test, data.truth_test);
        break;
      }
      default:
        throw ConfigError("method " + method.name + " needs the nonparam generator");
    }
    const auto t1 = std::chrono::steady_clock::now();
    ResultRecord rec;
    rec.experiment = cfg.id;
    rec.method = method.name;
    rec.m = rec_m;
    rec.n = rec_n;
    rec.cost_ratio = cfg.cost_ratio;
    rec.axis = axis;
    rec.axis_value = axis_value;
    rec.trial = trial;
    rec.seed = ctx.trial_seed;
    rec.mse = mse;
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.push_back(std::move(rec));
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (generator != "nonparam" && generator != "linear")
    throw ConfigError("unknown generator: " + generator);
  if (methods.empty()) throw ConfigError("no methods listed");
  for (const auto& m : methods) parse_method(m);
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (train_size < 1 || test_size < 1) throw ConfigError("split sizes must be >= 1");
  const bool budget_mode = budget > 0 || budget_labels > 0;
  if (!budget_mode && m_grid.empty()) throw ConfigError("m_grid or a budget is required");
  if (cost_ratio < 1) throw ConfigError("cost_ratio must be >= 1");
  oracle_config(*this);
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<MethodSpec> methods;
  for (const auto& name : cfg.methods) methods.push_back(parse_method(name));

  const bool budget_mode = cfg.budget > 0 || cfg.budget_labels > 0;
  std::vector<ResultRecord> out;

  if (budget_mode) {
    const double total = cfg.budget > 0 ? cfg.budget : cfg.budget_labels * cfg.cost_ratio;
    const BudgetPlan clr_plan = allocate_budget(cfg.cost_ratio, total, cfg.clr_labels);
    const auto label_only_m =
        static_cast<std::size_t>(std::floor(total / cfg.cost_ratio + 1e-9));
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      TrialContext ctx{cfg, mix_seed({cfg.seed, 0, trial})};
      if (cfg.generator == "linear") {
        run_linear_trial(ctx, clr_plan.labels, clr_plan.comparisons, label_only_m, trial,
                         "", 0.0, methods, out);
      } else {
        run_nonparam_trial(ctx, label_only_m, trial, "", 0.0, methods, out);
      }
    }
    return out;
  }

  for (std::size_t cell = 0; cell < cfg.m_grid.size(); ++cell) {
    const std::size_t m = cfg.m_grid[cell];
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      TrialContext ctx{cfg, mix_seed({cfg.seed, cell + 1, trial})};
      if (cfg.generator == "linear") {
        run_linear_trial(ctx, m, cfg.comparisons, m, trial, "", 0.0, methods, out);
      } else {
        run_nonparam_trial(ctx, m, trial, "", 0.0, methods, out);
      }
    }
  }
  return out;
}

ExperimentConfig apply_sweep_axis(const ExperimentConfig& config, const std::string& axis,
                                  double value) {
  ExperimentConfig cfg = config;
  std::uint64_t value_bits;
  std::memcpy(&value_bits, &value, sizeof value);
  cfg.seed = mix_seed({config.seed, hash_string(axis), value_bits});
  std::ostringstream id;
  id << config.id << "/" << axis << "=" << value;
  cfg.id = id.str();
  if (axis == "m") {
    cfg.m_grid = {static_cast<std::size_t>(value)};
    cfg.budget = 0;
    cfg.budget_labels = 0;
  } else if (axis == "c") {
    cfg.cost_ratio = value;
  } else if (axis == "C") {
    cfg.budget = value;
    cfg.budget_labels = 0;
  } else if (axis == "ranking_sigma") {
    cfg.ranking = "noisy-values";
    cfg.ranking_sigma = value;
  } else if (axis == "comparison_count") {
    cfg.comparisons = static_cast<std::size_t>(value);
  } else {
    throw ConfigError("unknown sweep axis: " + axis);
  }
  return cfg;
}

std::vector<ResultRecord> sweep(const std::string& axis, const std::vector<double>& values,
                                const ExperimentConfig& config) {
  if (values.empty()) throw ConfigError("sweep: no axis values");
  std::vector<ResultRecord> out;
  for (double value : values) {
    auto records = run_experiment(apply_sweep_axis(config, axis, value));
    for (auto& r : records) {
      r.axis = axis;
      r.axis_value = value;
    }
    out.insert(out.end(), records.begin(), records.end());
  }
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

void write_records_jsonl(std::ostream& os, const std::vector<ResultRecord>& records,
                         bool include_timing) {
  for (const auto& r : records) {
    os << "{\"experiment\":\"" << json_escape(r.experiment) << "\""
       << ",\"method\":\"" << json_escape(r.method) << "\""
       << ",\"m\":" << r.m << ",\"n\":" << r.n
       << ",\"c\":" << format_double(r.cost_ratio);
    if (!r.axis.empty())
      os << ",\"axis\":\"" << json_escape(r.axis) << "\",\"axis_value\":"
         << format_double(r.axis_value);
    os << ",\"trial\":" << r.trial << ",\"seed\":" << r.seed
       << ",\"mse\":" << format_double(r.mse);
    if (include_timing) os << ",\"wall_ms\":" << format_double(r.wall_ms);
    os << "}\n";
  }
}

std::vector<SummaryRow> summarize(const std::vector<ResultRecord>& records) {
  struct Key {
    std::string axis;
    double axis_value;
    std::size_t m;
    std::string method;
    bool operator<(const Key& o) const {
      return std::tie(axis, axis_value, m, method) <
             std::tie(o.axis, o.axis_value, o.m, o.method);
    }
  };
  std::map<Key, std::vector<double>> groups;
  std::vector<Key> order;
  for (const auto& r : records) {
    Key key{r.axis, r.axis_value, r.m, r.method};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.mse);
  }
  std::vector<SummaryRow> rows;
  for (const auto& key : order) {
    const auto& v = groups[key];
    SummaryRow row;
    row.axis = key.axis;
    row.axis_value = key.axis_value;
    row.m = key.m;
    row.method = key.method;
    row.trials = v.size();
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    if (v.size() > 1) var /= static_cast<double>(v.size() - 1);
    row.mean_mse = mean;
    row.std_mse = std::sqrt(var);
    row.stderr_mse = row.std_mse / std::sqrt(static_cast<double>(v.size()));
    rows.push_back(row);
  }
  return rows;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "axis,axis_value,m,method,trials,mean_mse,std_mse,stderr_mse\n";
  for (const auto& r : rows) {
    os << r.axis << "," << format_double(r.axis_value) << "," << r.m << "," << r.method
       << "," << r.trials << "," << format_double(r.mean_mse) << ","
       << format_double(r.std_mse) << "," << format_double(r.stderr_mse) << "\n";
  }
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& name) {
  ExperimentConfig cfg;
  cfg.id = name;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "id") cfg.id = value;
      else if (key == "generator") cfg.generator = value;
      else if (key == "methods") cfg.methods = split_list(value);
      else if (key == "trials") cfg.trials = std::stoull(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "train_size") cfg.train_size = std::stoull(value);
      else if (key == "test_size") cfg.test_size = std::stoull(value);
      else if (key == "m_grid") {
        cfg.m_grid.clear();
        for (const auto& v : split_list(value)) cfg.m_grid.push_back(std::stoull(v));
      }
      else if (key == "cost_ratio") cfg.cost_ratio = std::stod(value);
      else if (key == "budget") cfg.budget = std::stod(value);
      else if (key == "budget_labels") cfg.budget_labels = std::stod(value);
      else if (key == "clr_labels") cfg.clr_labels = std::stoull(value);
      else if (key == "ranking") cfg.ranking = value;
      else if (key == "ranking_sigma") cfg.ranking_sigma = std::stod(value);
      else if (key == "comparisons") cfg.comparisons = std::stoull(value);
      else if (key == "knn_borda_k") cfg.knn_borda_k = std::stoull(value);
      else if (key == "oracle") cfg.oracle = value;
      else if (key == "oracle_lambda") cfg.oracle_lambda = std::stod(value);
      else if (key == "oracle_sigma") cfg.oracle_sigma = std::stod(value);
      else if (key == "label_sigma") cfg.label_sigma = std::stod(value);
      else if (key == "nonparam_d") cfg.nonparam_d = std::stoull(value);
      else if (key == "nonparam_p") cfg.nonparam_p = std::stod(value);
      else if (key == "linear_d") cfg.linear_d = std::stoull(value);
      else if (key == "ranksvm_bandwidth") cfg.ranksvm_bandwidth = std::stod(value);
      else if (key == "ranksvm_reg") cfg.ranksvm_reg = std::stod(value);
      else if (key == "ranksvm_epochs") cfg.ranksvm_epochs = std::stoull(value);
      else if (key == "active_rounds") cfg.active_rounds = std::stoull(value);
      else if (key == "bound_M") cfg.bound_M = std::stod(value);
      else throw ConfigError("unknown config key: " + key);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("config line " + std::to_string(line_no) + ": bad value for " + key);
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config: " + path);
  std::string stem = path;
  const std::size_t slash = stem.find_last_of('/');
  if (slash != std::string::npos) stem = stem.substr(slash + 1);
  const std::size_t dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_config(is, stem);
}

}  // namespace ordreg::bench
