// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0
//
// dpecdf: differentially private ECDF toolkit. Subcommands cover curve
// release, monotone smoothing, inverse queries, ROC curves, the
// Hosmer-Lemeshow statistic, continual prefix-sum release, an FSS demo,
// synthetic data generation, and the experiment harness.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpecdf/aggregation.hpp"
#include "dpecdf/data.hpp"
#include "dpecdf/fss.hpp"
#include "dpecdf/grid.hpp"
#include "dpecdf/hosmer_lemeshow.hpp"
#include "dpecdf/io.hpp"
#include "dpecdf/noise.hpp"
#include "dpecdf/query.hpp"
#include "dpecdf/roc.hpp"
#include "dpecdf/smoothing.hpp"
#include "dpecdf/solver.hpp"
#include "experiments.hpp"

namespace {

using dpecdf::EvaluationGrid;
using dpecdf::Instance;
using dpecdf::PrivateEcdf;
using dpecdf::ScoredDataset;
using dpecdf::TreeNoiseRegistry;
using json = nlohmann::ordered_json;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitSolver = 4;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct GlobalOptions {
  std::uint64_t seed = 1;
  double epsilon = 1.0;
  bool noiseless = false;
  std::string backend = "plaintext";
  std::string format = "csv";
  std::string out;  // empty or "-" = stdout
  bool unsafe_dump_noise = false;

  double effective_epsilon() const {
    return noiseless ? dpecdf::kNoiselessEpsilon : epsilon;
  }
};

// Data source shared by ecdf / smooth / invcdf: a CSV score column or a
// synthetic Poisson value multiset.
struct ValueSourceOptions {
  std::string input;
  std::string score_column = "score";
  double poisson_lambda = 0;                     // > 0 selects synthetic
  std::size_t poisson_domain = std::size_t{1} << 10;
};

struct GridOptions {
  std::string kind = "uniform";  // uniform | geometric
  double lo = 0.0;
  double hi = 1.0;
  double psi = 1.0 / 64.0;
};

void add_value_source(CLI::App* cmd, ValueSourceOptions& v) {
  cmd->add_option("--input", v.input, "CSV file with a header row");
  cmd->add_option("--score-column", v.score_column, "score column name")
      ->capture_default_str();
  cmd->add_option("--poisson-lambda", v.poisson_lambda,
                  "generate synthetic data: Pois(lambda) copies per domain value");
  cmd->add_option("--poisson-domain", v.poisson_domain,
                  "domain size for --poisson-lambda")
      ->capture_default_str();
}

void add_grid_options(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--grid-kind", g.kind, "uniform | geometric")
      ->check(CLI::IsMember({"uniform", "geometric"}))
      ->capture_default_str();
  cmd->add_option("--grid-lo", g.lo, "grid lower bound (public)")
      ->capture_default_str();
  cmd->add_option("--grid-hi", g.hi, "grid upper bound (public)")
      ->capture_default_str();
  cmd->add_option("--grid-psi", g.psi, "grid resolution psi")
      ->capture_default_str();
}

bool grid_was_set(const CLI::App* cmd) {
  for (const char* name : {"--grid-kind", "--grid-lo", "--grid-hi", "--grid-psi"})
    if (cmd->count(name) > 0) return true;
  return false;
}

std::vector<double> load_values(const ValueSourceOptions& v, const GlobalOptions& g,
                                GridOptions& grid, bool grid_user_set) {
  if (v.poisson_lambda > 0) {
    auto values = dpecdf::gen_poisson_dataset(v.poisson_lambda, v.poisson_domain,
                                              derive_seed(g.seed, 7));
    if (!grid_user_set) {
      grid.kind = "uniform";
      grid.lo = 1.0;
      grid.hi = static_cast<double>(v.poisson_domain);
      grid.psi = 1.0;
    }
    return values;
  }
  if (v.input.empty())
    throw dpecdf::InvalidParameterError("either --input or --poisson-lambda is required");
  auto data = dpecdf::ingest_csv(v.input, v.score_column);
  std::cerr << "ingested " << v.input << ": n=" << data.n()
            << " positive_fraction=" << data.positive_fraction() << "\n";
  return data.scores();
}

EvaluationGrid build_grid(const GridOptions& g) {
  if (g.kind == "geometric") return dpecdf::make_geometric_grid(g.lo, g.hi, g.psi);
  return dpecdf::make_uniform_grid(g.lo, g.hi, g.psi);
}

std::vector<std::size_t> full_eval_set(const EvaluationGrid& grid) {
  std::vector<std::size_t> b(grid.n_points());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = i + 1;
  return b;
}

// Noise values are secret: only emitted on explicit request, to a
// sidecar file when --out names a file, to stderr otherwise.
void maybe_dump_noise(const GlobalOptions& g, const TreeNoiseRegistry& registry) {
  if (!g.unsafe_dump_noise) return;
  const std::string snapshot = registry.unsafe_snapshot_json();
  if (g.out.empty() || g.out == "-") {
    std::cerr << snapshot << "\n";
  } else {
    dpecdf::write_text(g.out + ".noise.json", snapshot + "\n");
  }
}

PrivateEcdf run_dp_curve(const GlobalOptions& g, const std::vector<double>& values,
                         const EvaluationGrid& grid, TreeNoiseRegistry& registry) {
  std::vector<Instance> instances;
  instances.reserve(values.size());
  for (double v : values) instances.push_back({v, 0});
  auto backend = dpecdf::make_backend(g.backend, std::move(instances), grid,
                                      registry, derive_seed(g.seed, 11));
  auto curve_values = dpecdf::evaluate_curve_pointwise(
      *backend, grid, full_eval_set(grid), g.effective_epsilon(), registry);
  std::cerr << "backend=" << g.backend << " cost "
            << backend->cost_report().to_json() << "\n";
  return PrivateEcdf{grid, std::move(curve_values), values.size(),
                     g.effective_epsilon()};
}

void emit(const GlobalOptions& g, const std::string& csv, const std::string& js) {
  dpecdf::write_text(g.out, g.format == "json" ? js : csv);
}

// ---- subcommand bodies ----

void cmd_ecdf(const GlobalOptions& g, const ValueSourceOptions& v, GridOptions grid,
              bool grid_user_set) {
  auto values = load_values(v, g, grid, grid_user_set);
  const auto eval_grid = build_grid(grid);
  TreeNoiseRegistry registry(derive_seed(g.seed, 1));
  auto curve = run_dp_curve(g, values, eval_grid, registry);
  emit(g, dpecdf::ecdf_to_csv(curve), dpecdf::ecdf_to_json(curve));
  maybe_dump_noise(g, registry);
}

void cmd_smooth(const GlobalOptions& g, const ValueSourceOptions& v,
                GridOptions grid, bool grid_user_set, int p) {
  auto values = load_values(v, g, grid, grid_user_set);
  const auto eval_grid = build_grid(grid);
  TreeNoiseRegistry registry(derive_seed(g.seed, 1));
  auto curve = run_dp_curve(g, values, eval_grid, registry);
  auto smoothed = dpecdf::smooth(curve, full_eval_set(eval_grid), p);
  emit(g, smoothed.to_csv(), smoothed.to_json());
  maybe_dump_noise(g, registry);
}

void cmd_invcdf(const GlobalOptions& g, const ValueSourceOptions& v,
                GridOptions grid, bool grid_user_set, double target,
                double search_psi, int smooth_p) {
  auto values = load_values(v, g, grid, grid_user_set);
  const auto eval_grid = build_grid(grid);
  TreeNoiseRegistry registry(derive_seed(g.seed, 1));
  auto curve = run_dp_curve(g, values, eval_grid, registry);
  if (search_psi <= 0)
    search_psi = (eval_grid.hi() - eval_grid.lo()) / 1024.0;

  dpecdf::InverseResult r;
  if (smooth_p > 0) {
    auto smoothed = dpecdf::smooth(curve, full_eval_set(eval_grid), smooth_p);
    r = dpecdf::inverse_ecdf(smoothed, target, search_psi, eval_grid.lo(),
                             eval_grid.hi());
  } else {
    r = dpecdf::inverse_ecdf(curve, target, search_psi, eval_grid.lo(),
                             eval_grid.hi());
  }

  std::ostringstream csv;
  csv.precision(17);
  csv << "target,value,iterations\n"
      << target << ',' << r.value << ',' << r.iterations << '\n';
  json j{{"target", target}, {"value", r.value}, {"iterations", r.iterations}};
  emit(g, csv.str(), j.dump(2) + "\n");
  maybe_dump_noise(g, registry);
}

void cmd_roc(const GlobalOptions& g, const std::string& input,
             const std::string& score_column, const std::string& label_column,
             GridOptions grid, int smooth_p) {
  auto data = dpecdf::ingest_csv(input, score_column, label_column);
  std::cerr << "ingested " << input << ": n=" << data.n()
            << " positive_fraction=" << data.positive_fraction() << "\n";
  const auto eval_grid = build_grid(grid);
  TreeNoiseRegistry tp_registry(derive_seed(g.seed, 2));
  TreeNoiseRegistry fp_registry(derive_seed(g.seed, 3));
  dpecdf::BudgetAccount account(g.effective_epsilon());
  auto curve = dpecdf::dp_roc(data, eval_grid, g.effective_epsilon(), tp_registry,
                              fp_registry, &account);
  if (smooth_p > 0) curve = dpecdf::smooth_roc(curve, smooth_p);
  std::cerr << "budget ledger: " << account.to_json() << "\n";
  emit(g, curve.to_csv(), curve.to_json());
  maybe_dump_noise(g, tp_registry);
}

void cmd_hl(const GlobalOptions& g, const std::string& input,
            const std::string& score_column, const std::string& label_column,
            int Q, int L, double floor_delta) {
  auto data = dpecdf::ingest_csv(input, score_column, label_column);
  std::cerr << "ingested " << input << ": n=" << data.n()
            << " positive_fraction=" << data.positive_fraction() << "\n";
  TreeNoiseRegistry registry(derive_seed(g.seed, 4));
  std::unique_ptr<dpecdf::AggregationBackend> backend;
  if (g.backend == "plaintext") {
    backend = std::make_unique<dpecdf::PlaintextBackend>(data.records, registry);
  } else if (g.backend.rfind("addshare:m=", 0) == 0) {
    backend = std::make_unique<dpecdf::AddShareBackend>(
        data.records, registry, std::stoul(g.backend.substr(11)),
        derive_seed(g.seed, 12));
  } else {
    throw dpecdf::InvalidParameterError(
        "hl needs a generic-kernel backend (plaintext or addshare:m=<k>)");
  }
  auto result = dpecdf::hl_statistic_dp(data, Q, g.effective_epsilon(), L,
                                        *backend, registry, floor_delta);
  emit(g, result.to_csv(), result.to_json());
  maybe_dump_noise(g, registry);
}

void cmd_continual(const GlobalOptions& g, std::size_t horizon,
                   const std::string& mechanism, double z,
                   const std::string& input, const std::string& value_column) {
  std::vector<double> stream;
  if (!input.empty()) {
    auto data = dpecdf::ingest_csv(input, value_column);
    stream = data.scores();
    if (stream.size() > horizon) stream.resize(horizon);
  } else {
    // Demo stream: Rademacher +-1 steps.
    std::mt19937_64 rng(derive_seed(g.seed, 5));
    stream.resize(horizon);
    for (auto& x : stream) x = (rng() & 1) ? 1.0 : -1.0;
  }
  for (double x : stream) {
    if (std::abs(x) > 1.0)
      throw dpecdf::DataError("continual stream elements must lie in [-1, 1]");
  }

  auto release = mechanism == "gaussian"
                     ? dpecdf::ContinualRelease::gaussian(horizon, z,
                                                          derive_seed(g.seed, 6))
                     : dpecdf::ContinualRelease::laplace(horizon, g.epsilon,
                                                         derive_seed(g.seed, 6));
  std::vector<double> released;
  released.reserve(stream.size());
  for (double x : stream) released.push_back(release.release(x));

  std::ostringstream csv;
  csv.precision(17);
  csv << "t,released_sum\n";
  for (std::size_t t = 0; t < released.size(); ++t)
    csv << (t + 1) << ',' << released[t] << '\n';

  json j;
  j["mechanism"] = mechanism;
  j["horizon"] = horizon;
  j["tree_depth"] = release.tree_depth();
  j["per_term_variance"] = release.per_term_variance();
  if (mechanism == "gaussian") {
    j["zcdp_rho"] = release.zcdp_rho();
  } else {
    j["per_term_scale"] = release.per_term_scale();
    j["epsilon"] = g.epsilon;
  }
  j["released"] = released;
  emit(g, csv.str(), j.dump(2) + "\n");
  maybe_dump_noise(g, release.registry());
}

void cmd_fss_demo(const GlobalOptions& g, int domain_bits, std::int64_t threshold,
                  std::uint64_t payload) {
  if (domain_bits < 1 || domain_bits > 20)
    throw dpecdf::InvalidParameterError("--domain-bits must be in [1, 20]");
  const std::uint64_t domain = std::uint64_t{1} << domain_bits;
  if (threshold < 0) threshold = static_cast<std::int64_t>(domain) / 2;
  if (static_cast<std::uint64_t>(threshold) >= domain)
    throw dpecdf::InvalidParameterError("--threshold must be in [0, 2^L)");

  std::mt19937_64 rng(derive_seed(g.seed, 8));
  auto [k0, k1] = dpecdf::dcf_gen(domain_bits,
                                  static_cast<std::uint64_t>(threshold), payload,
                                  rng);
  bool all_correct = true;
  for (std::uint64_t x = 0; x < domain; ++x) {
    const std::uint64_t sum =
        dpecdf::dcf_eval(0, k0, x) + dpecdf::dcf_eval(1, k1, x);
    const std::uint64_t expected =
        x <= static_cast<std::uint64_t>(threshold) ? payload : 0;
    if (sum != expected) all_correct = false;
  }

  std::ostringstream csv;
  csv << "domain_bits,threshold,payload,key_bytes,all_points_correct\n"
      << domain_bits << ',' << threshold << ',' << payload << ','
      << k0.serialize().size() << ',' << (all_correct ? 1 : 0) << '\n';
  json j{{"domain_bits", domain_bits},
         {"threshold", threshold},
         {"payload", payload},
         {"key_bytes", k0.serialize().size()},
         {"all_points_correct", all_correct}};
  emit(g, csv.str(), j.dump(2) + "\n");
  if (!all_correct) throw std::runtime_error("DCF share sums disagree");
}

void cmd_gen_poisson(const GlobalOptions& g, double lambda, std::size_t domain) {
  auto values = dpecdf::gen_poisson_dataset(lambda, domain, g.seed);
  std::ostringstream csv;
  csv.precision(17);
  csv << "score\n";
  for (double v : values) csv << v << '\n';
  json j{{"lambda", lambda}, {"domain", domain}, {"seed", g.seed},
         {"values", values}};
  emit(g, csv.str(), j.dump(2) + "\n");
  std::cerr << "generated " << values.size() << " values over [1, " << domain
            << "]\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differentially private ECDF toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read defaults from a TOML/INI file");

  GlobalOptions g;
  app.add_option("--seed", g.seed, "root RNG seed")->capture_default_str();
  app.add_option("--epsilon", g.epsilon, "privacy budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--noiseless", g.noiseless, "disable noise (epsilon = infinity)");
  app.add_option("--backend", g.backend,
                 "plaintext | addshare:m=<k> | fss:m=2")
      ->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "output path ('-' = stdout)");
  app.add_flag("--unsafe-dump-noise", g.unsafe_dump_noise,
               "emit secret registry noise values (audit only)");

  // ecdf
  auto* ecdf_cmd = app.add_subcommand("ecdf", "publish a DP ECDF curve");
  ValueSourceOptions ecdf_src;
  GridOptions ecdf_grid;
  add_value_source(ecdf_cmd, ecdf_src);
  add_grid_options(ecdf_cmd, ecdf_grid);

  // smooth
  auto* smooth_cmd =
      app.add_subcommand("smooth", "publish a monotone-smoothed DP ECDF curve");
  ValueSourceOptions smooth_src;
  GridOptions smooth_grid;
  int smooth_p = 2;
  add_value_source(smooth_cmd, smooth_src);
  add_grid_options(smooth_cmd, smooth_grid);
  smooth_cmd->add_option("--p", smooth_p, "smoothing norm (1 or 2)")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();

  // invcdf
  auto* inv_cmd = app.add_subcommand("invcdf", "inverse-ECDF binary search");
  ValueSourceOptions inv_src;
  GridOptions inv_grid;
  double inv_target = 0.5, inv_psi = 0;
  int inv_smooth_p = 0;
  add_value_source(inv_cmd, inv_src);
  add_grid_options(inv_cmd, inv_grid);
  inv_cmd->add_option("--target", inv_target, "quantile level p in (0, 1)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  inv_cmd->add_option("--search-psi", inv_psi,
                      "search resolution (default: range/1024)");
  inv_cmd->add_option("--smooth-p", inv_smooth_p,
                      "smooth the curve first (0 = off, 1 or 2 = norm)")
      ->check(CLI::IsMember({0, 1, 2}))
      ->capture_default_str();

  // roc
  auto* roc_cmd = app.add_subcommand("roc", "publish a DP ROC curve");
  std::string roc_input, roc_score = "score", roc_label = "label";
  GridOptions roc_grid;
  int roc_smooth_p = 0;
  roc_cmd->add_option("--input", roc_input, "CSV with score and label columns")
      ->required();
  roc_cmd->add_option("--score-column", roc_score)->capture_default_str();
  roc_cmd->add_option("--label-column", roc_label)->capture_default_str();
  add_grid_options(roc_cmd, roc_grid);
  roc_cmd->add_option("--smooth-p", roc_smooth_p,
                      "smooth the count curves (0 = off, 1 or 2 = norm)")
      ->check(CLI::IsMember({0, 1, 2}))
      ->capture_default_str();

  // hl
  auto* hl_cmd = app.add_subcommand("hl", "DP Hosmer-Lemeshow statistic");
  std::string hl_input, hl_score = "score", hl_label = "label";
  int hl_Q = 10, hl_L = 4;
  double hl_floor = 0.5;
  hl_cmd->add_option("--input", hl_input, "CSV with score and label columns")
      ->required();
  hl_cmd->add_option("--score-column", hl_score)->capture_default_str();
  hl_cmd->add_option("--label-column", hl_label)->capture_default_str();
  hl_cmd->add_option("--Q", hl_Q, "number of quantile groups")
      ->capture_default_str();
  hl_cmd->add_option("--L", hl_L, "cut-point grid depth (2^L points)")
      ->capture_default_str();
  hl_cmd->add_option("--floor", hl_floor, "expected-count floor delta")
      ->capture_default_str();

  // continual
  auto* cont_cmd =
      app.add_subcommand("continual", "DP running prefix sums of a stream");
  std::size_t cont_horizon = 64;
  std::string cont_mechanism = "laplace", cont_input, cont_column = "value";
  double cont_z = 1.0;
  cont_cmd->add_option("--horizon", cont_horizon, "stream length bound")
      ->capture_default_str();
  cont_cmd->add_option("--mechanism", cont_mechanism, "laplace | gaussian")
      ->check(CLI::IsMember({"laplace", "gaussian"}))
      ->capture_default_str();
  cont_cmd->add_option("--z", cont_z, "gaussian noise multiplier")
      ->capture_default_str();
  cont_cmd->add_option("--input", cont_input,
                       "CSV stream values in [-1, 1] (default: +-1 demo walk)");
  cont_cmd->add_option("--value-column", cont_column)->capture_default_str();

  // fss-demo
  auto* fss_cmd =
      app.add_subcommand("fss-demo", "two-server comparison-sharing demo");
  int fss_bits = 4;
  std::int64_t fss_threshold = -1;
  std::uint64_t fss_payload = 1;
  fss_cmd->add_option("--domain-bits", fss_bits, "domain [0, 2^L)")
      ->capture_default_str();
  fss_cmd->add_option("--threshold", fss_threshold,
                      "comparison threshold (default: 2^L / 2)");
  fss_cmd->add_option("--payload", fss_payload, "output payload beta")
      ->capture_default_str();

  // gen-poisson
  auto* gen_cmd =
      app.add_subcommand("gen-poisson", "synthetic Poisson value dataset");
  double gen_lambda = 3.0;
  std::size_t gen_domain = std::size_t{1} << 15;
  gen_cmd->add_option("--lambda", gen_lambda, "Poisson rate per domain value")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--domain", gen_domain, "domain size")
      ->capture_default_str();

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run a named experiment");
  std::string exp_name;
  dpecdf::tools::ExperimentConfig exp_cfg;
  exp_cmd
      ->add_option("name", exp_name,
                   "smooth-ratio-eps | smooth-ratio-lambda | invcdf-mse | "
                   "roc-symmdiff | hl-mse | smooth-runtime")
      ->required();
  exp_cmd->add_option("--reps", exp_cfg.reps, "repetitions per point")
      ->capture_default_str();
  exp_cmd->add_option("--lambda", exp_cfg.lambda, "Poisson rate")
      ->capture_default_str();
  exp_cmd->add_option("--domain", exp_cfg.domain, "value domain size")
      ->capture_default_str();
  exp_cmd->add_option("--p", exp_cfg.p_norm, "smoothing norm")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  exp_cmd->add_option("--Q", exp_cfg.Q, "HL quantile groups")
      ->capture_default_str();
  exp_cmd->add_option("--L", exp_cfg.L, "HL grid depth")->capture_default_str();

  // Let global flags appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (ecdf_cmd->parsed()) {
      cmd_ecdf(g, ecdf_src, ecdf_grid, grid_was_set(ecdf_cmd));
    } else if (smooth_cmd->parsed()) {
      cmd_smooth(g, smooth_src, smooth_grid, grid_was_set(smooth_cmd), smooth_p);
    } else if (inv_cmd->parsed()) {
      cmd_invcdf(g, inv_src, inv_grid, grid_was_set(inv_cmd), inv_target,
                 inv_psi, inv_smooth_p);
    } else if (roc_cmd->parsed()) {
      cmd_roc(g, roc_input, roc_score, roc_label, roc_grid, roc_smooth_p);
    } else if (hl_cmd->parsed()) {
      cmd_hl(g, hl_input, hl_score, hl_label, hl_Q, hl_L, hl_floor);
    } else if (cont_cmd->parsed()) {
      cmd_continual(g, cont_horizon, cont_mechanism, cont_z, cont_input,
                    cont_column);
    } else if (fss_cmd->parsed()) {
      cmd_fss_demo(g, fss_bits, fss_threshold, fss_payload);
    } else if (gen_cmd->parsed()) {
      cmd_gen_poisson(g, gen_lambda, gen_domain);
    } else if (exp_cmd->parsed()) {
      exp_cfg.seed = g.seed;
      exp_cfg.format = g.format;
      exp_cfg.out = g.out;
      dpecdf::tools::run_experiment(exp_name, exp_cfg);
    }
  } catch (const dpecdf::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const dpecdf::ConvergenceError& e) {
    std::cerr << "solver did not converge: " << e.what() << "\n";
    return kExitSolver;
  } catch (const dpecdf::InvalidParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const dpecdf::InvalidDomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
