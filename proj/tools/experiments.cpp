// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dpecdf/aggregation.hpp"
#include "dpecdf/data.hpp"
#include "dpecdf/hosmer_lemeshow.hpp"
#include "dpecdf/io.hpp"
#include "dpecdf/noise.hpp"
#include "dpecdf/query.hpp"
#include "dpecdf/roc.hpp"
#include "dpecdf/smoothing.hpp"

namespace dpecdf::tools {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// splitmix64 finalizer; derives independent substream seeds from
// (seed, salt) so repetitions never share noise.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Runs fn(rep) for rep in [0, reps) across hardware threads; results
// land in a preallocated slot per rep, so the output is identical to a
// serial run.
template <class Fn>
std::vector<std::vector<double>> parallel_reps(int reps, Fn fn) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(reps));
  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(reps)));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int rep = static_cast<int>(w); rep < reps;
           rep += static_cast<int>(workers)) {
        out[static_cast<std::size_t>(rep)] = fn(rep);
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

// Multi-metric series: one row per x with (mean, std) per metric.
struct Table {
  std::string x_name;
  std::vector<std::string> y_names;
  struct Row {
    double x = 0;
    std::vector<SeriesPoint> stats;  // one per y_name
  };
  std::vector<Row> rows;

  std::string to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << x_name;
    for (const auto& y : y_names) os << ',' << y << "_mean," << y << "_std";
    os << '\n';
    for (const auto& r : rows) {
      os << r.x;
      for (const auto& s : r.stats) os << ',' << s.mean << ',' << s.stddev;
      os << '\n';
    }
    return os.str();
  }

  std::string to_json() const {
    json j;
    j["x"] = x_name;
    j["series"] = json::array();
    for (const auto& r : rows) {
      json row;
      row[x_name] = r.x;
      for (std::size_t k = 0; k < y_names.size(); ++k) {
        row[y_names[k] + "_mean"] = r.stats[k].mean;
        row[y_names[k] + "_std"] = r.stats[k].stddev;
      }
      j["series"].push_back(row);
    }
    return j.dump(2) + "\n";
  }
};

std::vector<std::size_t> full_eval_set(const EvaluationGrid& grid) {
  std::vector<std::size_t> b(grid.n_points());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = i + 1;
  return b;
}

// Poisson value dataset rescaled to scores in (0, 1]: value i maps to
// i/domain; grid is the uniform image lattice.
struct ScaledPoisson {
  std::vector<double> scores;
  EvaluationGrid grid;
};

ScaledPoisson scaled_poisson(double lambda, std::size_t domain,
                             std::uint64_t seed) {
  auto values = gen_poisson_dataset(lambda, domain, seed);
  const double d = static_cast<double>(domain);
  for (auto& v : values) v /= d;
  return {std::move(values), make_uniform_grid(1.0 / d, 1.0, 1.0 / d)};
}

// Synthetic two-class scores for the ROC / HL experiments: positives
// lean high, negatives lean low, both truncated normals on [0, 1].
ScoredDataset synthetic_classifier(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> pos(0.65, 0.15), neg(0.35, 0.15);
  ScoredDataset data;
  data.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = (i % 2 == 0) ? 1 : 0;
    double s = label ? pos(rng) : neg(rng);
    s = std::clamp(s, 0.0, 1.0);
    data.records.push_back({s, label});
  }
  return data;
}

Table experiment_smooth_ratio_eps(const ExperimentConfig& cfg) {
  const auto data = scaled_poisson(cfg.lambda, cfg.domain, derive_seed(cfg.seed, 0));
  const auto truth = noiseless_ecdf(data.scores, data.grid);
  const auto eval_set = full_eval_set(data.grid);
  Table t{"epsilon", {"mse_ratio"}, {}};
  const std::vector<double> eps_grid = {0.2, 0.5, 1.0, 2.0};
  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    const double eps = eps_grid[e];
    auto samples = parallel_reps(cfg.reps, [&](int rep) {
      TreeNoiseRegistry reg(derive_seed(cfg.seed, 1000 * (e + 1) + rep));
      auto dp = dp_ecdf(data.scores, data.grid, eps, reg);
      auto sm = smooth(dp, eval_set, cfg.p_norm);
      return std::vector<double>{mse_ratio(truth, dp, sm)};
    });
    std::vector<double> ratios;
    for (auto& s : samples) ratios.push_back(s[0]);
    t.rows.push_back({eps, {summarize(eps, ratios)}});
  }
  return t;
}

Table experiment_smooth_ratio_lambda(const ExperimentConfig& cfg) {
  Table t{"lambda", {"mse_ratio"}, {}};
  const double eps = 1.0;
  const std::vector<double> lambdas = {0.5, 1.0, 2.0, 3.0, 5.0};
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const auto data =
        scaled_poisson(lambdas[k], cfg.domain, derive_seed(cfg.seed, 50 + k));
    const auto truth = noiseless_ecdf(data.scores, data.grid);
    const auto eval_set = full_eval_set(data.grid);
    auto samples = parallel_reps(cfg.reps, [&](int rep) {
      TreeNoiseRegistry reg(derive_seed(cfg.seed, 2000 * (k + 1) + rep));
      auto dp = dp_ecdf(data.scores, data.grid, eps, reg);
      auto sm = smooth(dp, eval_set, cfg.p_norm);
      return std::vector<double>{mse_ratio(truth, dp, sm)};
    });
    std::vector<double> ratios;
    for (auto& s : samples) ratios.push_back(s[0]);
    t.rows.push_back({lambdas[k], {summarize(lambdas[k], ratios)}});
  }
  return t;
}

Table experiment_invcdf_mse(const ExperimentConfig& cfg) {
  const auto data = scaled_poisson(cfg.lambda, cfg.domain, derive_seed(cfg.seed, 0));
  const auto truth = noiseless_ecdf(data.scores, data.grid);
  const double lo = data.grid.lo(), hi = data.grid.hi();
  const double psi = 1.0 / static_cast<double>(cfg.domain);
  std::vector<double> targets;
  for (int k = 1; k <= 9; ++k) targets.push_back(k / 10.0);
  std::vector<double> true_inv;
  for (double p : targets)
    true_inv.push_back(inverse_ecdf(truth, p, psi, lo, hi).value);

  Table t{"epsilon", {"forward_mse", "inverse_mse"}, {}};
  const std::vector<double> eps_grid = {0.5, 1.0, 2.0};
  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    const double eps = eps_grid[e];
    auto samples = parallel_reps(cfg.reps, [&](int rep) {
      TreeNoiseRegistry reg(derive_seed(cfg.seed, 3000 * (e + 1) + rep));
      auto dp = dp_ecdf(data.scores, data.grid, eps, reg);
      double fwd = 0;
      for (std::size_t i = 0; i < dp.values.size(); ++i) {
        const double d = dp.values[i] - truth.values[i];
        fwd += d * d;
      }
      fwd /= static_cast<double>(dp.values.size());
      double inv = 0;
      for (std::size_t k = 0; k < targets.size(); ++k) {
        const double d =
            inverse_ecdf(dp, targets[k], psi, lo, hi).value - true_inv[k];
        inv += d * d;
      }
      inv /= static_cast<double>(targets.size());
      return std::vector<double>{fwd, inv};
    });
    std::vector<double> fwd, inv;
    for (auto& s : samples) {
      fwd.push_back(s[0]);
      inv.push_back(s[1]);
    }
    t.rows.push_back({eps, {summarize(eps, fwd), summarize(eps, inv)}});
  }
  return t;
}

Table experiment_roc_symmdiff(const ExperimentConfig& cfg) {
  const auto data = synthetic_classifier(2000, derive_seed(cfg.seed, 0));
  const auto grid = make_uniform_grid(0.0, 1.0, 1.0 / 64.0);
  TreeNoiseRegistry clean_tp(0), clean_fp(0);
  const auto truth = dp_roc(data, grid, kNoiselessEpsilon, clean_tp, clean_fp);

  Table t{"epsilon", {"symm_diff"}, {}};
  const std::vector<double> eps_grid = {0.1, 0.2, 0.5, 1.0, 2.0};
  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    const double eps = eps_grid[e];
    auto samples = parallel_reps(cfg.reps, [&](int rep) {
      TreeNoiseRegistry tp(derive_seed(cfg.seed, 4000 * (e + 1) + 2 * rep));
      TreeNoiseRegistry fp(derive_seed(cfg.seed, 4000 * (e + 1) + 2 * rep + 1));
      auto dp = dp_roc(data, grid, eps, tp, fp);
      auto sm = smooth_roc(dp, cfg.p_norm);
      return std::vector<double>{roc_symmetric_difference(sm, truth)};
    });
    std::vector<double> diffs;
    for (auto& s : samples) diffs.push_back(s[0]);
    t.rows.push_back({eps, {summarize(eps, diffs)}});
  }
  return t;
}

Table experiment_hl_mse(const ExperimentConfig& cfg) {
  const auto data = synthetic_classifier(2000, derive_seed(cfg.seed, 0));
  TreeNoiseRegistry clean_reg(0);
  PlaintextBackend clean_backend(data.records, clean_reg);
  const double h_true =
      hl_statistic_dp(data, cfg.Q, kNoiselessEpsilon, cfg.L, clean_backend,
                      clean_reg)
          .H;
  if (h_true == 0)
    throw std::runtime_error("degenerate synthetic data: noiseless H is zero");

  Table t{"epsilon", {"relative_mse"}, {}};
  const std::vector<double> eps_grid = {0.2, 0.5, 1.0, 2.0, 5.0};
  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    const double eps = eps_grid[e];
    auto samples = parallel_reps(cfg.reps, [&](int rep) {
      TreeNoiseRegistry reg(derive_seed(cfg.seed, 5000 * (e + 1) + rep));
      PlaintextBackend backend(data.records, reg);
      const double h = hl_statistic_dp(data, cfg.Q, eps, cfg.L, backend, reg).H;
      const double r = (h - h_true) / h_true;
      return std::vector<double>{r * r};
    });
    std::vector<double> errs;
    for (auto& s : samples) errs.push_back(s[0]);
    t.rows.push_back({eps, {summarize(eps, errs)}});
  }
  return t;
}

Table experiment_smooth_runtime(const ExperimentConfig& cfg) {
  Table t{"n_points", {"p1_seconds", "p2_seconds"}, {}};
  for (int logn = 6; logn <= 11; ++logn) {
    const std::size_t domain = std::size_t{1} << logn;
    const auto data =
        scaled_poisson(cfg.lambda, domain, derive_seed(cfg.seed, 100 + logn));
    const auto eval_set = full_eval_set(data.grid);
    std::vector<double> t1, t2;
    // Serial on purpose: timings under thread contention are noise.
    for (int rep = 0; rep < cfg.reps; ++rep) {
      TreeNoiseRegistry reg(derive_seed(cfg.seed, 6000 * logn + rep));
      auto dp = dp_ecdf(data.scores, data.grid, 1.0, reg);
      const auto a = Clock::now();
      smooth(dp, eval_set, 1);
      const auto b = Clock::now();
      smooth(dp, eval_set, 2);
      const auto c = Clock::now();
      t1.push_back(std::chrono::duration<double>(b - a).count());
      t2.push_back(std::chrono::duration<double>(c - b).count());
    }
    const double x = static_cast<double>(domain);
    t.rows.push_back({x, {summarize(x, t1), summarize(x, t2)}});
  }
  return t;
}

void write_manifest(const std::string& name, const ExperimentConfig& cfg,
                    double runtime_seconds) {
  if (cfg.out.empty() || cfg.out == "-") return;
  json j;
  j["experiment"] = name;
  j["version"] = "dpecdf-0.1.0";
  j["config"] = {{"seed", cfg.seed},       {"reps", cfg.reps},
                 {"lambda", cfg.lambda},   {"domain", cfg.domain},
                 {"p_norm", cfg.p_norm},   {"Q", cfg.Q},
                 {"L", cfg.L},             {"format", cfg.format},
                 {"out", cfg.out}};
  j["runtime_seconds"] = runtime_seconds;
  write_text(cfg.out + ".manifest.json", j.dump(2) + "\n");
}

}  // namespace

void run_experiment(const std::string& name, const ExperimentConfig& cfg) {
  if (cfg.reps < 1)
    throw InvalidParameterError("experiments need at least 1 repetition");
  const auto start = Clock::now();
  Table table;
  if (name == "smooth-ratio-eps") {
    table = experiment_smooth_ratio_eps(cfg);
  } else if (name == "smooth-ratio-lambda") {
    table = experiment_smooth_ratio_lambda(cfg);
  } else if (name == "invcdf-mse") {
    table = experiment_invcdf_mse(cfg);
  } else if (name == "roc-symmdiff") {
    table = experiment_roc_symmdiff(cfg);
  } else if (name == "hl-mse") {
    table = experiment_hl_mse(cfg);
  } else if (name == "smooth-runtime") {
    table = experiment_smooth_runtime(cfg);
  } else {
    throw InvalidParameterError("unknown experiment: " + name);
  }
  write_text(cfg.out, cfg.format == "json" ? table.to_json() : table.to_csv());
  const double runtime = std::chrono::duration<double>(Clock::now() - start).count();
  write_manifest(name, cfg, runtime);
}

}  // namespace dpecdf::tools
