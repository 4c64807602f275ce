// Command-line front end: dataset generation, experiment runs, sweeps, and a
// quick self-check of the library invariants.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ordreg/baselines.hpp"
#include "ordreg/bench.hpp"
#include "ordreg/clr.hpp"
#include "ordreg/io.hpp"
#include "ordreg/isotonic.hpp"
#include "ordreg/linalg.hpp"
#include "ordreg/metrics.hpp"
#include "ordreg/oracles.hpp"
#include "ordreg/rank_aggregate.hpp"
#include "ordreg/synthetic.hpp"

namespace fs = std::filesystem;
using namespace ordreg;

namespace {

fs::path output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("ORDREG_OUT")) return env;
  return ".";
}

void write_truth(const fs::path& path, std::span<const double> truth) {
  std::ofstream os(path);
  os.precision(17);
  os << "truth\n";
  for (double v : truth) os << v << "\n";
}

int cmd_gen(const std::string& kind, std::size_t train, std::size_t test,
            std::uint64_t seed, double p, double label_sigma, std::size_t d,
            const std::string& out_flag) {
  const fs::path dir = output_dir(out_flag);
  fs::create_directories(dir);
  Rng rng(seed);
  std::ostringstream meta;
  meta << "kind = " << kind << "\nseed = " << seed << "\ntrain = " << train
       << "\ntest = " << test << "\n";
  if (kind == "nonparam") {
    NonparamSpec spec;
    if (d) spec.d = d;
    spec.p = p;
    spec.label_sigma = label_sigma;
    const auto data = gen_nonparametric(spec, train, test, rng);
    save_dataset_csv((dir / "train.csv").string(), data.train);
    save_dataset_csv((dir / "test.csv").string(), data.test);
    write_truth(dir / "train_truth.csv", data.truth_train);
    write_truth(dir / "test_truth.csv", data.truth_test);
    meta << "d = " << spec.d << "\nlabel_sigma = " << label_sigma
         << "\np = " << data.p.front() << "\n";
  } else if (kind == "linear") {
    LinearSpec spec;
    if (d) spec.d = d;
    spec.label_sigma = label_sigma;
    const auto data = gen_linear(spec, train, test, rng);
    save_dataset_csv((dir / "train.csv").string(), data.train);
    save_dataset_csv((dir / "test.csv").string(), data.test);
    write_truth(dir / "train_truth.csv", data.truth_train);
    write_truth(dir / "test_truth.csv", data.truth_test);
    std::ofstream ws(dir / "w_star.csv");
    ws.precision(17);
    ws << "w\n";
    for (double v : data.w_star) ws << v << "\n";
    meta << "d = " << spec.d << "\nlabel_sigma = " << label_sigma << "\n";
  } else {
    std::cerr << "unknown generator kind: " << kind << "\n";
    return 1;
  }
  std::ofstream(dir / "meta.txt") << meta.str();
  std::cout << "wrote dataset to " << dir.string() << "\n";
  return 0;
}

int cmd_run(const std::string& config_path, std::uint64_t seed_override, bool has_seed,
            const std::string& out_flag, bool timings) {
  auto cfg = bench::load_config(config_path);
  if (has_seed) cfg.seed = seed_override;
  const auto records = bench::run_experiment(cfg);

  const fs::path dir = output_dir(out_flag);
  fs::create_directories(dir);
  {
    std::ofstream os(dir / (cfg.id + ".records.jsonl"));
    bench::write_records_jsonl(os, records, timings);
  }
  {
    std::ofstream os(dir / (cfg.id + ".summary.csv"));
    bench::write_summary_csv(os, bench::summarize(records));
  }
  std::cout << records.size() << " records -> " << (dir / (cfg.id + ".records.jsonl")).string()
            << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::vector<double>& values, std::uint64_t seed_override, bool has_seed,
              const std::string& out_flag, bool timings) {
  auto cfg = bench::load_config(config_path);
  if (has_seed) cfg.seed = seed_override;
  const auto records = bench::sweep(axis, values, cfg);

  const fs::path dir = output_dir(out_flag);
  fs::create_directories(dir);
  const std::string stem = cfg.id + ".sweep-" + axis;
  {
    std::ofstream os(dir / (stem + ".records.jsonl"));
    bench::write_records_jsonl(os, records, timings);
  }
  {
    std::ofstream os(dir / (stem + ".summary.csv"));
    bench::write_summary_csv(os, bench::summarize(records));
  }
  std::cout << records.size() << " records -> " << (dir / (stem + ".records.jsonl")).string()
            << "\n";
  return 0;
}

bool report(const char* name, bool ok) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
  return ok;
}

// Quick invariant suite; a cut-down version of what the test binaries cover.
int cmd_check() {
  bool ok = true;
  {
    // PAVA against a quantized exhaustive oracle.
    Rng rng(11);
    bool all = true;
    for (int rep = 0; rep < 40 && all; ++rep) {
      const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform_index(5));
      std::vector<double> y(m);
      for (double& v : y) v = rng.uniform(-1.0, 1.0);
      const auto fit = fit_bounded_isotonic(y, 1.0);
      double best = 1e300;
      std::vector<double> grid;
      for (double g = -1.0; g <= 1.0 + 1e-9; g += 0.25) grid.push_back(g);
      std::vector<std::size_t> pick(m, 0);
      while (true) {
        bool mono = true;
        for (std::size_t i = 1; i < m; ++i)
          if (pick[i] < pick[i - 1]) mono = false;
        if (mono) {
          double sse = 0.0;
          for (std::size_t i = 0; i < m; ++i) {
            const double r = grid[pick[i]] - y[i];
            sse += r * r;
          }
          best = std::min(best, sse);
        }
        std::size_t j = 0;
        while (j < m && ++pick[j] == grid.size()) pick[j++] = 0;
        if (j == m) break;
      }
      if (!(fit.sse <= best + 1e-9)) all = false;
    }
    ok &= report("isotonic PAVA matches exhaustive grid oracle", all);
  }
  {
    // Complete tournaments recover the exact ranking through Borda.
    bool all = true;
    for (std::size_t n = 2; n <= 5 && all; ++n) {
      std::vector<double> values(n);
      Rng rng(n);
      for (double& v : values) v = rng.uniform();
      ComparisonSet comps;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          comps.add(i, j, values[i] > values[j] ? 1 : -1);
      const auto ranking = scores_to_ranking(borda_scores(comps, n));
      all = ranking == ranking_from_values(values);
    }
    ok &= report("complete-tournament Borda recovery", all);
  }
  {
    // Scale-estimator identity.
    Rng rng(3);
    bool all = true;
    for (int rep = 0; rep < 20 && all; ++rep) {
      const std::size_t d = 4, m = 12;
      std::vector<double> v(d);
      for (double& x : v) x = rng.normal();
      normalize(v);
      SampleSet s(m, d);
      const double c = rng.uniform(-3.0, 3.0);
      for (std::size_t i = 0; i < m; ++i) {
        for (double& x : s.row(i)) x = rng.normal();
        s.set_label(i, c * dot(v, s.row(i)));
      }
      all = std::abs(estimate_scale(v, s) - c) <= 1e-9 * (1.0 + std::abs(c));
    }
    ok &= report("scale-estimator algebraic identity", all);
  }
  {
    // Determinism + budget accounting on a miniature benchmark run.
    bench::ExperimentConfig cfg;
    cfg.id = "check";
    cfg.generator = "linear";
    cfg.methods = {"clr-passive", "ols"};
    cfg.trials = 2;
    cfg.train_size = 200;
    cfg.test_size = 50;
    cfg.linear_d = 5;
    cfg.m_grid = {20};
    cfg.comparisons = 80;
    bool all = true;
    try {
      const auto r1 = bench::run_experiment(cfg);
      const auto r2 = bench::run_experiment(cfg);
      std::ostringstream s1, s2;
      bench::write_records_jsonl(s1, r1);
      bench::write_records_jsonl(s2, r2);
      all = s1.str() == s2.str();
    } catch (const std::exception&) {
      all = false;
    }
    ok &= report("benchmark determinism and budget accounting", all);
  }
  std::cout << (ok ? "check: all good\n" : "check: FAILURES\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regression with ordinal supervision: datasets, estimators, benchmarks"};
  app.require_subcommand(1);

  std::string out_flag;

  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset as CSV");
  std::string gen_kind = "nonparam";
  std::size_t gen_train = 1000, gen_test = 1000, gen_d = 0;
  std::uint64_t gen_seed = 1;
  double gen_p = -1.0, gen_sigma = 0.5;
  gen->add_option("--kind", gen_kind, "nonparam | linear");
  gen->add_option("--train", gen_train, "training rows");
  gen->add_option("--test", gen_test, "test rows");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--p", gen_p, "component parameter; negative draws from [0,10]");
  gen->add_option("--label-sigma", gen_sigma, "label noise std");
  gen->add_option("--d", gen_d, "dimension (0 = generator default)");
  gen->add_option("--out", out_flag, "output directory (or $ORDREG_OUT)");

  auto* run = app.add_subcommand("run", "Run an experiment config");
  std::string run_config;
  std::uint64_t run_seed = 0;
  bool run_timings = false;
  run->add_option("config", run_config, "config file")->required();
  auto* run_seed_opt = run->add_option("--seed", run_seed, "override config seed");
  run->add_flag("--timings", run_timings, "include wall_ms in the records");
  run->add_option("--out", out_flag, "output directory (or $ORDREG_OUT)");

  auto* sw = app.add_subcommand("sweep", "Sweep one axis of an experiment config");
  std::string sweep_config, sweep_axis;
  std::vector<double> sweep_values;
  std::uint64_t sweep_seed = 0;
  bool sweep_timings = false;
  sw->add_option("config", sweep_config, "config file")->required();
  sw->add_option("--axis", sweep_axis, "m | c | C | ranking_sigma | comparison_count")
      ->required();
  sw->add_option("--values", sweep_values, "axis values")->required()->delimiter(',');
  auto* sweep_seed_opt = sw->add_option("--seed", sweep_seed, "override config seed");
  sw->add_flag("--timings", sweep_timings, "include wall_ms in the records");
  sw->add_option("--out", out_flag, "output directory (or $ORDREG_OUT)");

  auto* check = app.add_subcommand("check", "Run the quick invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_gen(gen_kind, gen_train, gen_test, gen_seed, gen_p, gen_sigma, gen_d,
                     out_flag);
    if (run->parsed())
      return cmd_run(run_config, run_seed, run_seed_opt->count() > 0, out_flag, run_timings);
    if (sw->parsed())
      return cmd_sweep(sweep_config, sweep_axis, sweep_values, sweep_seed,
                       sweep_seed_opt->count() > 0, out_flag, sweep_timings);
    if (check->parsed()) return cmd_check();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
