// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0
//
// Release-gate checks for the library and the CLI. Each criterion prints
// one PASS/FAIL line; the process exits nonzero if any criterion fails.
// argv[1] (optional) is the path to the dpecdf CLI binary; without it
// the reproducibility criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dpecdf/aggregation.hpp"
#include "dpecdf/data.hpp"
#include "dpecdf/fss.hpp"
#include "dpecdf/grid.hpp"
#include "dpecdf/hosmer_lemeshow.hpp"
#include "dpecdf/noise.hpp"
#include "dpecdf/query.hpp"
#include "dpecdf/roc.hpp"
#include "dpecdf/smoothing.hpp"
#include "dpecdf/stats.hpp"
#include "support/oracles.hpp"
#include "support/reference_solver.hpp"

using namespace dpecdf;
using Clock = std::chrono::steady_clock;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw CheckFailure(what);
}

std::string g_cli_path;

// ---------- shared helpers ----------

int reconstruct(const std::vector<SignedNode>& nodes, std::int64_t d,
                std::int64_t x) {
  int sum = 0;
  for (const auto& sn : nodes) {
    const std::int64_t lo = d + (sn.node.j - 1) * (std::int64_t{1} << sn.node.l) + 1;
    const std::int64_t hi = d + sn.node.j * (std::int64_t{1} << sn.node.l);
    if (x >= lo && x <= hi) sum += sn.sign;
  }
  return sum;
}

std::vector<std::size_t> full_eval_set(const EvaluationGrid& grid) {
  std::vector<std::size_t> b(grid.n_points());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = i + 1;
  return b;
}

// Poisson value dataset mapped onto (0, 1] with its uniform image grid.
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

ScoredDataset synthetic_classifier(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> pos(0.65, 0.15), neg(0.35, 0.15);
  ScoredDataset data;
  data.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = (i % 2 == 0) ? 1 : 0;
    data.records.push_back({std::clamp(label ? pos(rng) : neg(rng), 0.0, 1.0),
                            label});
  }
  return data;
}

std::vector<Instance> grid_instances(const EvaluationGrid& grid, std::size_t n,
                                     std::mt19937_64& rng) {
  std::vector<Instance> out(n);
  for (auto& x : out) {
    x.score = grid.point(1 + rng() % grid.n_points());
    x.label = static_cast<int>(rng() % 2);
  }
  return out;
}

PrivateEcdf noisy_curve(std::size_t n_points, std::mt19937_64& rng) {
  std::vector<double> pts(n_points);
  for (std::size_t i = 0; i < n_points; ++i) pts[i] = static_cast<double>(i + 1);
  std::uniform_real_distribution<double> unif(-0.3, 0.3);
  std::vector<double> vals(n_points);
  for (std::size_t i = 0; i < n_points; ++i)
    vals[i] = static_cast<double>(i + 1) / static_cast<double>(n_points) + unif(rng);
  return PrivateEcdf{EvaluationGrid(pts), vals, 100, 1.0};
}

double reference_objective(const PrivateEcdf& base,
                           const std::vector<std::size_t>& eval_set, int p) {
  auto prob = oracles::dense_smoothing_problem(base, eval_set);
  Eigen::VectorXd nu0 = oracles::strictly_feasible_corrections(base, eval_set, prob);
  const Eigen::Index nvar = prob.G.cols();
  if (p == 2) {
    Eigen::MatrixXd P = 2.0 * Eigen::MatrixXd::Identity(nvar, nvar);
    Eigen::VectorXd x = refsolve::barrier_solve(P, Eigen::VectorXd::Zero(nvar),
                                                prob.G, prob.h, nu0, 1e-12);
    return x.squaredNorm();
  }
  const Eigen::Index m = prob.G.rows();
  Eigen::MatrixXd G2 = Eigen::MatrixXd::Zero(m + 2 * nvar, 2 * nvar);
  Eigen::VectorXd h2 = Eigen::VectorXd::Zero(m + 2 * nvar);
  G2.block(0, 0, m, nvar) = prob.G;
  G2.block(0, nvar, m, nvar) = -prob.G;
  h2.head(m) = prob.h;
  G2.block(m, 0, 2 * nvar, 2 * nvar) = -Eigen::MatrixXd::Identity(2 * nvar, 2 * nvar);
  Eigen::VectorXd x0(2 * nvar);
  for (Eigen::Index i = 0; i < nvar; ++i) {
    x0[i] = std::max(nu0[i], 0.0) + 1e-3;
    x0[nvar + i] = std::max(-nu0[i], 0.0) + 1e-3;
  }
  Eigen::VectorXd x = refsolve::barrier_solve(
      Eigen::MatrixXd::Zero(2 * nvar, 2 * nvar), Eigen::VectorXd::Ones(2 * nvar),
      G2, h2, x0, 1e-12);
  return x.sum();
}

// ---------- criteria ----------

void criterion_1_decomposition() {
  for (int L = 0; L <= 8; ++L) {
    const std::int64_t size = std::int64_t{1} << L;
    const std::int64_t bound = (L + 2) / 2;  // ceil((L+1)/2)
    for (std::int64_t d : {std::int64_t{0}, std::int64_t{5}}) {
      for (std::int64_t b = d + 1; b <= d + size; ++b) {
        auto pre = decompose_interval(L, d, b, IntervalSide::Prefix);
        auto suf = decompose_interval(L, d, b, IntervalSide::Suffix);
        require(static_cast<std::int64_t>(pre.size()) <= bound,
                "prefix nonzero bound violated");
        require(static_cast<std::int64_t>(suf.size()) <= bound,
                "suffix nonzero bound violated");
        for (std::int64_t x = d + 1; x <= d + size; ++x) {
          require(reconstruct(pre, d, x) == (x <= b ? 1 : 0),
                  "prefix reconstruction mismatch");
          require(reconstruct(suf, d, x) == (x >= b ? 1 : 0),
                  "suffix reconstruction mismatch");
        }
      }
    }
  }
}

void criterion_2_adjacent_shift() {
  for (int L = 0; L <= 6; ++L) {
    const std::int64_t size = std::int64_t{1} << L;
    for (std::int64_t t1 = 0; t1 < size; ++t1) {
      for (std::int64_t t2 = t1 + 1; t2 <= size; ++t2) {
        auto v = adjacent_shift_vector(L, t1, t2);
        require(static_cast<int>(v.size()) <= L + 1, "shift nonzero bound violated");
        for (std::int64_t x = 1; x <= size; ++x)
          require(reconstruct(v, 0, x) == (x >= t1 + 1 && x <= t2 ? 1 : 0),
                  "shift reconstruction mismatch");
      }
    }
  }
}

void criterion_3_noise_variance() {
  const int L = 4;
  const double eps = 1.0;
  const auto path = path_indices(L, 1);
  require(path.size() == static_cast<std::size_t>(L + 1), "path length");
  double sum_sq = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    TreeNoiseRegistry reg(static_cast<std::uint64_t>(i) + 1);
    reg.set_tree_spec(NoiseSpec::laplace((L + 1) / eps));
    double s = 0;
    for (const auto& idx : path) s += reg.value(idx);
    sum_sq += s * s;
  }
  const double mean_sq = sum_sq / trials;
  const double want = 2.0 * std::pow(L + 1.0, 3) / (eps * eps);  // 250
  require(std::abs(mean_sq - want) <= 0.05 * want,
          "path-sum second moment " + std::to_string(mean_sq) +
              " outside 250 +- 5%");
}

void criterion_4_continual_scales() {
  // Exact scale policy at L = 3 (horizon 8).
  auto lap = ContinualRelease::laplace(8, 1.0, 1);
  require(lap.tree_depth() == 3, "laplace tree depth");
  require(lap.per_term_scale() == 2.0, "laplace per-term scale must be exactly 2");
  require(lap.per_term_variance() == 8.0, "laplace per-term variance 2b^2");
  const double z = 1.5;
  auto gau = ContinualRelease::gaussian(8, z, 1);
  require(gau.per_term_variance() == 2.0 * z * z,
          "gaussian per-term variance must be exactly ceil((L+1)/2) z^2");
  require(gau.zcdp_rho() == 1.0 / (2.0 * z * z), "zCDP rho");

  // Empirical variance of the first release on a zero stream, both
  // variants, against m * per-term variance where m is the number of
  // noise terms actually drawn.
  const int trials = 100000;
  for (int variant = 0; variant < 2; ++variant) {
    double sum = 0, sum_sq = 0;
    std::size_t terms = 0;
    for (int i = 0; i < trials; ++i) {
      auto rel = variant == 0
                     ? ContinualRelease::laplace(8, 1.0, 1000 + i)
                     : ContinualRelease::gaussian(8, z, 1000 + i);
      const double s = rel.release(0.0);
      terms = rel.registry().drawn_count();
      sum += s;
      sum_sq += s * s;
    }
    const double mean = sum / trials;
    const double var = sum_sq / trials - mean * mean;
    const double want = static_cast<double>(terms) *
                        (variant == 0 ? 8.0 : 2.0 * z * z);
    require(std::abs(var - want) <= 0.05 * want,
            "empirical release variance " + std::to_string(var) +
                " outside " + std::to_string(want) + " +- 5%");
  }
}

void criterion_5_smoothing_optimality() {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t N = 2 + rng() % 15;
    auto base = noisy_curve(N, rng);
    auto eval_set = full_eval_set(base.grid);
    for (int p : {1, 2}) {
      auto sm = smooth(base, eval_set, p);
      require(sm.values.front() >= 0.0, "lower boundary violated");
      require(sm.values.back() <= 1.0, "upper boundary violated");
      for (std::size_t i = 1; i < N; ++i)
        require(sm.values[i] >= sm.values[i - 1], "monotonicity violated");
      const double ref = reference_objective(base, eval_set, p);
      const double tol = 1e-6 * std::max(1.0, ref);
      require(std::abs(sm.objective - ref) <= tol,
              "objective " + std::to_string(sm.objective) + " vs reference " +
                  std::to_string(ref) + " (p=" + std::to_string(p) + ")");
    }
  }
}

void criterion_6_smoothing_trend() {
  const std::size_t domain = std::size_t{1} << 10;
  auto data = scaled_poisson(3.0, domain, 11);
  const auto truth = noiseless_ecdf(data.scores, data.grid);
  const auto eval_set = full_eval_set(data.grid);
  const int reps = 50;

  auto mean_ratio = [&](double eps, int p, std::uint64_t salt) {
    double sum = 0;
    for (int rep = 0; rep < reps; ++rep) {
      TreeNoiseRegistry reg(salt * 100000 + rep + 1);
      auto dp = dp_ecdf(data.scores, data.grid, eps, reg);
      auto sm = smooth(dp, eval_set, p);
      sum += mse_ratio(truth, dp, sm);
    }
    return sum / reps;
  };

  const std::vector<double> eps_grid = {0.2, 0.5, 1.0, 2.0};
  std::vector<double> p2_ratios;
  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    const double r = mean_ratio(eps_grid[e], 2, e + 1);
    require(r < 1.0, "p=2 mean MSE ratio >= 1 at eps=" +
                         std::to_string(eps_grid[e]));
    p2_ratios.push_back(r);
  }
  const double p1_low_eps = mean_ratio(0.2, 1, 99);
  require(p2_ratios[0] <= p1_low_eps,
          "p=2 ratio " + std::to_string(p2_ratios[0]) +
              " exceeds p=1 ratio " + std::to_string(p1_low_eps) +
              " at eps=0.2");
}

void criterion_7_backend_equivalence() {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n_points = std::size_t{1} << (1 + rng() % 4);
    auto grid = make_uniform_grid(0.0, 1.0, 1.0 / static_cast<double>(n_points - 1));
    const auto instances = grid_instances(grid, 5 + rng() % 20, rng);
    const std::size_t i = 1 + rng() % grid.n_points();
    const auto kernel = Kernel::threshold_le(grid.point(i));
    // Random subset of the full index set.
    std::vector<NodeIndex> indices;
    for (const auto& idx : grid.path_indices(i))
      if (rng() % 2) indices.push_back(idx);

    const std::uint64_t seed = rng();
    TreeNoiseRegistry r_plain(seed), r_add2(seed), r_add3(seed), r_fss(seed);
    for (auto* r : {&r_plain, &r_add2, &r_add3, &r_fss})
      r->set_tree_spec(NoiseSpec::laplace(1.0 + (trial % 5)));

    PlaintextBackend plain(instances, r_plain);
    AddShareBackend add2(instances, r_add2, 2, 7);
    AddShareBackend add3(instances, r_add3, 3, 7);
    FssBackend fss(instances, grid, r_fss, 7);

    const double want = plain.u_stat(kernel, indices);
    const double tol = std::ldexp(1.0, -20);
    require(std::abs(add2.u_stat(kernel, indices) - want) <= tol,
            "addshare m=2 disagrees with plaintext");
    require(std::abs(add3.u_stat(kernel, indices) - want) <= tol,
            "addshare m=3 disagrees with plaintext");
    require(std::abs(fss.u_stat(kernel, indices) - want) <= tol,
            "fss disagrees with plaintext");
  }
}

void criterion_8_fss_exhaustive() {
  std::mt19937_64 rng(404);
  const int L = 10;
  const std::uint64_t domain = std::uint64_t{1} << L;
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t t = rng() % domain;
    const std::uint64_t payload = 1 + rng() % 1000;
    auto [k0, k1] = dcf_gen(L, t, payload, rng);
    for (std::uint64_t x = 0; x < domain; ++x) {
      const std::uint64_t sum = dcf_eval(0, k0, x) + dcf_eval(1, k1, x);
      require(sum == (x <= t ? payload : 0), "DCF share sum mismatch");
    }
  }
  // Key byte length: affine in L, pinned exactly.
  for (int l : {4, 8, 10}) {
    require(DcfKey::serialized_size(l) ==
                static_cast<std::size_t>(8 + 16 + 25 * (l + 1) + 8),
            "key size law violated at L=" + std::to_string(l));
  }
  std::mt19937_64 rng2(1);
  auto [k0, k1] = dcf_gen(4, 3, 1, rng2);
  require(k0.serialize().size() == DcfKey::serialized_size(4),
          "serialized size disagrees with the law");
}

void criterion_9_communication() {
  std::mt19937_64 rng(21);
  auto grid = make_uniform_grid(0.0, 1.0, 1.0 / 7.0);  // |B| = 8
  require(grid.n_points() == 8, "grid size");
  const auto instances = grid_instances(grid, 16, rng);
  const auto eval_set = full_eval_set(grid);

  TreeNoiseRegistry reg(1);
  PlaintextBackend plain(instances, reg);
  evaluate_curve_pointwise(plain, grid, eval_set, 1.0, reg);
  require(plain.cost_report().party_messages == 128,
          "plaintext party messages != n|B| = 128");

  TreeNoiseRegistry reg2(1);
  FssBackend fss(instances, grid, reg2, 5);
  require(fss.cost_report().messages_sent() == 32, "FSS key messages != 2n = 32");
  evaluate_curve_pointwise(fss, grid, eval_set, 1.0, reg2);
  require(fss.cost_report().messages_sent() == 64,
          "FSS total messages != 2n + 4|B| = 64");
}

void criterion_10_inverse_ecdf() {
  std::mt19937_64 rng(515);
  // Random monotone curves against the scan oracle.
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t N = 4 + rng() % 60;
    const double lo = 0.0, hi = 1.0;
    auto grid = make_uniform_grid(lo, hi, 1.0 / static_cast<double>(N));
    std::vector<double> vals(grid.n_points());
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double acc = 0;
    for (auto& v : vals) {
      acc += unif(rng);
      v = acc;
    }
    for (auto& v : vals) v /= acc;  // nondecreasing into (0, 1]
    PrivateEcdf curve{grid, vals, 100, kNoiselessEpsilon};

    const double p = unif(rng);
    const double psi = (hi - lo) / 512.0;
    auto r = inverse_ecdf(curve, p, psi, lo, hi);
    const int want_iters =
        static_cast<int>(std::ceil(std::log2((hi - lo) / psi)));
    require(r.iterations == want_iters, "iteration count law violated");
    const double oracle = oracles::inverse_scan(curve, p);
    const double grid_step = grid.point(2) - grid.point(1);
    require(std::abs(r.value - oracle) <= psi + grid_step + 1e-12,
            "inverse result too far from the scan oracle");
  }

  // DP trend: forward and inverse MSE within one order of magnitude.
  const std::size_t domain = 256;
  auto data = scaled_poisson(3.0, domain, 77);
  const auto truth = noiseless_ecdf(data.scores, data.grid);
  const double lo = data.grid.lo(), hi = data.grid.hi();
  const double psi = 1.0 / static_cast<double>(domain);
  std::vector<double> targets;
  for (int k = 1; k <= 9; ++k) targets.push_back(k / 10.0);
  std::vector<double> true_inv;
  for (double p : targets) true_inv.push_back(inverse_ecdf(truth, p, psi, lo, hi).value);

  const int reps = 50;
  for (double eps : {0.5, 1.0, 2.0}) {
    double fwd = 0, inv = 0;
    for (int rep = 0; rep < reps; ++rep) {
      TreeNoiseRegistry reg(static_cast<std::uint64_t>(eps * 1000) * 1000 + rep);
      auto dp = dp_ecdf(data.scores, data.grid, eps, reg);
      for (std::size_t i = 0; i < dp.values.size(); ++i) {
        const double d = dp.values[i] - truth.values[i];
        fwd += d * d / static_cast<double>(dp.values.size());
      }
      for (std::size_t k = 0; k < targets.size(); ++k) {
        const double d = inverse_ecdf(dp, targets[k], psi, lo, hi).value - true_inv[k];
        inv += d * d / static_cast<double>(targets.size());
      }
    }
    fwd /= reps;
    inv /= reps;
    require(inv >= 0.1 * fwd && inv <= 10.0 * fwd,
            "inverse MSE " + std::to_string(inv) + " and forward MSE " +
                std::to_string(fwd) + " differ by more than 10x at eps=" +
                std::to_string(eps));
  }
}

void criterion_11_roc() {
  // Noiseless curve equals the direct sweep oracle.
  auto small = synthetic_classifier(500, 5);
  auto grid = make_uniform_grid(0.0, 1.0, 1.0 / 32.0);
  TreeNoiseRegistry tp0(0), fp0(0);
  auto clean = dp_roc(small, grid, kNoiselessEpsilon, tp0, fp0);
  auto sweep = oracles::roc_sweep(small, grid);
  for (std::size_t i = 0; i < grid.n_points(); ++i) {
    require(std::abs(clean.tpr[i] - sweep.tpr[i]) <= 1e-12, "TPR mismatch");
    require(std::abs(clean.fpr[i] - sweep.fpr[i]) <= 1e-12, "FPR mismatch");
  }

  // Trend on a 10^4-point dataset.
  auto data = synthetic_classifier(10000, 6);
  auto eval_grid = make_uniform_grid(0.0, 1.0, 1.0 / 64.0);
  TreeNoiseRegistry tp1(0), fp1(0);
  const auto truth = dp_roc(data, eval_grid, kNoiselessEpsilon, tp1, fp1);
  const int reps = 100;
  std::vector<double> means;
  for (double eps : {0.1, 0.2, 0.5, 1.0, 2.0}) {
    double sum = 0;
    for (int rep = 0; rep < reps; ++rep) {
      const std::uint64_t base = static_cast<std::uint64_t>(eps * 10000);
      TreeNoiseRegistry tp(base * 1000 + 2 * rep);
      TreeNoiseRegistry fp(base * 1000 + 2 * rep + 1);
      auto dp = dp_roc(data, eval_grid, eps, tp, fp);
      auto sm = smooth_roc(dp, 2);
      sum += roc_symmetric_difference(sm, truth);
    }
    means.push_back(sum / reps);
  }
  for (std::size_t e = 1; e < means.size(); ++e)
    require(means[e] <= means[e - 1],
            "mean symmetric difference increased between adjacent eps values");
}

void criterion_12_hosmer_lemeshow() {
  // (a) Exact ledger accounting.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int L : {1, 3, 6, 11}) {
    for (int Q : {2, 7}) {
      for (double eps : {0.3, 1.0, 5.0}) {
        ScoredDataset d;
        for (int i = 0; i < 25; ++i) {
          const double s = unif(rng);
          d.records.push_back({s, unif(rng) < s ? 1 : 0});
        }
        TreeNoiseRegistry reg(rng());
        PlaintextBackend backend(d.records, reg);
        auto res = hl_statistic_dp(d, Q, eps, L, backend, reg);
        require(res.ledger.total_fraction() == Rational(1, 1),
                "ledger fractions do not sum to 1");
        require(res.ledger.entries().size() == 2 &&
                    res.ledger.entries()[0].session_frac == Rational(L + 1, L + 9) &&
                    res.ledger.entries()[1].session_frac == Rational(8, L + 9),
                "ledger split mismatch");
        require(std::abs(res.ledger.total() - eps) <= 1e-12 * eps,
                "ledger total deviates from eps");
      }
    }
  }

  // (b) Noiseless equals the plaintext oracle on n=20, Q=2 data.
  ScoredDataset two;
  for (int i = 0; i < 10; ++i) two.records.push_back({0.20 + 0.01 * i, i < 3 ? 1 : 0});
  for (int i = 0; i < 10; ++i) two.records.push_back({0.70 + 0.01 * i, i < 7 ? 1 : 0});
  TreeNoiseRegistry reg(2);
  PlaintextBackend backend(two.records, reg);
  auto res = hl_statistic_dp(two, 2, kNoiselessEpsilon, 4, backend, reg);
  auto oracle = oracles::plaintext_hl(two, {0.0, 0.5, 1.0}, res.floor_delta);
  require(std::abs(res.H - oracle.H) <= 1e-9 * std::max(1.0, oracle.H),
          "noiseless H deviates from the plaintext oracle");
  for (int q = 0; q < 2; ++q) {
    require(std::abs(res.obs_pos[q] - oracle.obs_pos[q]) <= 1e-9 &&
                std::abs(res.exp_pos[q] - oracle.exp_pos[q]) <= 1e-9 &&
                std::abs(res.obs_neg[q] - oracle.obs_neg[q]) <= 1e-9 &&
                std::abs(res.exp_neg[q] - oracle.exp_neg[q]) <= 1e-9,
            "noiseless group statistics deviate from the oracle");
  }

  // (c) Locality under single-record replacement with fixed cuts.
  std::mt19937_64 rng2(88);
  const std::vector<double> cuts{0.0, 0.2, 0.45, 0.7, 0.9, 1.0};
  for (int trial = 0; trial < 1000; ++trial) {
    ScoredDataset d;
    for (int i = 0; i < 40; ++i) {
      const double s = unif(rng2);
      d.records.push_back({s, unif(rng2) < s ? 1 : 0});
    }
    auto modified = d;
    modified.records[rng2() % d.n()] = {unif(rng2), static_cast<int>(rng2() % 2)};
    auto a = oracles::plaintext_hl(d, cuts, 0.5);
    auto b = oracles::plaintext_hl(modified, cuts, 0.5);
    int changed = 0;
    for (std::size_t q = 0; q + 1 < cuts.size(); ++q) {
      if (a.obs_pos[q] != b.obs_pos[q] || a.obs_neg[q] != b.obs_neg[q] ||
          a.exp_pos[q] != b.exp_pos[q] || a.exp_neg[q] != b.exp_neg[q])
        ++changed;
    }
    require(changed <= 2, "single replacement touched more than 2 groups");
  }

  // (d) chi-square survival closed form.
  require(std::abs(chi2_sf(2.0 * std::log(2.0), 2) - 0.5) <= 1e-10,
          "chi2_sf(2 ln 2, 2) != 0.5");
}

void criterion_13_runtime_trend() {
  std::ostringstream log;
  double p1_last = 0, p2_last = 0;
  for (int logn = 6; logn <= 11; ++logn) {
    const std::size_t domain = std::size_t{1} << logn;
    auto data = scaled_poisson(3.0, domain, 100 + logn);
    const auto eval_set = full_eval_set(data.grid);
    double t1 = 1e30, t2 = 1e30;  // best of 3
    for (int rep = 0; rep < 3; ++rep) {
      TreeNoiseRegistry reg(1000 * logn + rep);
      auto dp = dp_ecdf(data.scores, data.grid, 1.0, reg);
      auto a = Clock::now();
      smooth(dp, eval_set, 1);
      auto b = Clock::now();
      smooth(dp, eval_set, 2);
      auto c = Clock::now();
      t1 = std::min(t1, std::chrono::duration<double>(b - a).count());
      t2 = std::min(t2, std::chrono::duration<double>(c - b).count());
    }
    log << "  N=" << domain << " p1=" << t1 << "s p2=" << t2 << "s\n";
    p1_last = t1;
    p2_last = t2;
  }
  std::cout << log.str();
  require(p2_last <= p1_last, "p=2 solve slower than p=1 at N=2^11");
}

void criterion_14_cli_reproducibility() {
  require(!g_cli_path.empty(), "CLI binary path not provided (argv[1])");
  char tmpl[] = "/tmp/dpecdf_accept_XXXXXX";
  require(mkdtemp(tmpl) != nullptr, "mkdtemp failed");
  const std::string dir = tmpl;

  auto run = [&](const std::string& args, const std::string& out) {
    const std::string cmd =
        g_cli_path + " " + args + " --out " + out + " >/dev/null 2>&1";
    require(std::system(cmd.c_str()) == 0, "CLI invocation failed: " + cmd);
  };
  auto same_bytes = [](const std::string& a, const std::string& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return fa.good() == fb.good() && sa.str() == sb.str() && !sa.str().empty();
  };

  const std::vector<std::pair<std::string, std::string>> cases = {
      {"ecdf --poisson-lambda 3 --poisson-domain 64 --epsilon 1 --seed 7", "ecdf"},
      {"smooth --poisson-lambda 2 --poisson-domain 32 --epsilon 0.5 --seed 9 "
       "--format json", "smooth"},
      {"invcdf --poisson-lambda 3 --poisson-domain 64 --target 0.4 --seed 3", "inv"},
      {"gen-poisson --lambda 1.5 --domain 128 --seed 5", "gen"},
      {"experiment smooth-ratio-eps --reps 2 --domain 32 --seed 7", "exp"},
      {"experiment invcdf-mse --reps 2 --domain 32 --seed 8 --format json", "exp2"},
  };
  for (const auto& [args, name] : cases) {
    const std::string a = dir + "/" + name + "_a";
    const std::string b = dir + "/" + name + "_b";
    run(args, a);
    run(args, b);
    require(same_bytes(a, b), "outputs differ across identical runs: " + args);
  }
}

struct Criterion {
  int id;
  const char* name;
  std::function<void()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  const std::vector<Criterion> criteria = {
      {1, "interval decomposition: exhaustive reconstruction and nonzero bound",
       criterion_1_decomposition},
      {2, "adjacent-shift vectors: exhaustive reconstruction and L+1 bound",
       criterion_2_adjacent_shift},
      {3, "tree noise: path-sum variance 2(L+1)^3/eps^2 within 5%",
       criterion_3_noise_variance},
      {4, "continual release: exact scale policy and empirical variance",
       criterion_4_continual_scales},
      {5, "smoothing: exact feasibility, objective within 1e-6 of reference",
       criterion_5_smoothing_optimality},
      {6, "smoothing trend: MSE ratio < 1, p=2 beats p=1 at small eps",
       criterion_6_smoothing_trend},
      {7, "backend equivalence: plaintext, addshare, fss publish alike",
       criterion_7_backend_equivalence},
      {8, "DCF: exhaustive correctness at L=10 and exact key-size law",
       criterion_8_fss_exhaustive},
      {9, "communication accounting: 128 plaintext / 64 fss messages",
       criterion_9_communication},
      {10, "inverse ECDF: proximity, iteration law, forward/inverse MSE",
       criterion_10_inverse_ecdf},
      {11, "ROC: sweep-oracle equality and error trend in eps",
       criterion_11_roc},
      {12, "Hosmer-Lemeshow: ledger, oracle equality, locality, chi2",
       criterion_12_hosmer_lemeshow},
      {13, "smoothing runtime: p=2 at least as fast as p=1 at N=2^11",
       criterion_13_runtime_trend},
      {14, "CLI reproducibility: byte-identical outputs under a fixed seed",
       criterion_14_cli_reproducibility},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    std::string error;
    try {
      c.fn();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    char line[512];
    if (error.empty()) {
      std::snprintf(line, sizeof(line), "PASS %2d: %s (%.2fs)", c.id, c.name, secs);
    } else {
      std::snprintf(line, sizeof(line), "FAIL %2d: %s (%.2fs): %s", c.id, c.name,
                    secs, error.c_str());
      ++failures;
    }
    std::cout << line << std::endl;
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all 14 criteria passed" << std::endl;
  return 0;
}
