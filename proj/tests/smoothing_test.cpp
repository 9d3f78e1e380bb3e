// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dpecdf/smoothing.hpp"
#include "support/oracles.hpp"
#include "support/reference_solver.hpp"

using namespace dpecdf;

namespace {

PrivateEcdf noisy_curve(std::size_t n_points, std::mt19937_64& rng) {
  std::vector<double> pts(n_points);
  for (std::size_t i = 0; i < n_points; ++i) pts[i] = static_cast<double>(i + 1);
  std::uniform_real_distribution<double> unif(-0.3, 0.3);
  std::vector<double> vals(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    vals[i] = static_cast<double>(i + 1) / static_cast<double>(n_points) + unif(rng);
  }
  return PrivateEcdf{EvaluationGrid(pts), vals, 100, 1.0};
}

std::vector<std::size_t> full_eval_set(std::size_t n_points) {
  std::vector<std::size_t> b(n_points);
  for (std::size_t i = 0; i < n_points; ++i) b[i] = i + 1;
  return b;
}

double reference_objective(const PrivateEcdf& base,
                           const std::vector<std::size_t>& eval_set, int p) {
  auto prob = oracles::dense_smoothing_problem(base, eval_set);
  Eigen::VectorXd nu0 = oracles::strictly_feasible_corrections(base, eval_set, prob);
  const Eigen::Index nvar = prob.G.cols();
  if (p == 2) {
    Eigen::MatrixXd P = 2.0 * Eigen::MatrixXd::Identity(nvar, nvar);
    Eigen::VectorXd x =
        refsolve::barrier_solve(P, Eigen::VectorXd::Zero(nvar), prob.G, prob.h, nu0);
    return x.squaredNorm();
  }
  // p = 1: variables [nu+; nu-], objective 1'(nu+ + nu-), constraints
  // G(nu+ - nu-) <= h plus nonnegativity.
  const Eigen::Index m = prob.G.rows();
  Eigen::MatrixXd G2 = Eigen::MatrixXd::Zero(m + 2 * nvar, 2 * nvar);
  Eigen::VectorXd h2 = Eigen::VectorXd::Zero(m + 2 * nvar);
  G2.block(0, 0, m, nvar) = prob.G;
  G2.block(0, nvar, m, nvar) = -prob.G;
  h2.head(m) = prob.h;
  G2.block(m, 0, 2 * nvar, 2 * nvar) =
      -Eigen::MatrixXd::Identity(2 * nvar, 2 * nvar);
  Eigen::VectorXd x0(2 * nvar);
  for (Eigen::Index i = 0; i < nvar; ++i) {
    x0[i] = std::max(nu0[i], 0.0) + 1e-3;
    x0[nvar + i] = std::max(-nu0[i], 0.0) + 1e-3;
  }
  Eigen::VectorXd x = refsolve::barrier_solve(
      Eigen::MatrixXd::Zero(2 * nvar, 2 * nvar),
      Eigen::VectorXd::Ones(2 * nvar), G2, h2, x0);
  return x.sum();
}

}  // namespace

TEST_CASE("two-point curve is pulled to the midpoint") {
  PrivateEcdf base{EvaluationGrid({1.0, 2.0}), {0.6, 0.4}, 10, 1.0};
  auto sm = smooth(base, {1, 2}, 2);
  REQUIRE(sm.values.size() == 2);
  CHECK(sm.values[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(sm.values[1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("already monotone curves are left alone") {
  PrivateEcdf base{EvaluationGrid({1.0, 2.0, 3.0}), {0.2, 0.5, 0.9}, 10, 1.0};
  for (int p : {1, 2}) {
    auto sm = smooth(base, {1, 2, 3}, p);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(sm.values[i] == doctest::Approx(base.values[i]).epsilon(1e-6));
    CHECK(sm.objective < 1e-6);
  }
}

TEST_CASE("smoothing output is exactly feasible and reconstructs") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t N = 2 + rng() % 15;
    auto base = noisy_curve(N, rng);
    auto eval_set = full_eval_set(N);
    for (int p : {1, 2}) {
      auto sm = smooth(base, eval_set, p);
      REQUIRE(sm.values.size() == N);
      CHECK(sm.values.front() >= 0.0);
      CHECK(sm.values.back() <= 1.0);
      for (std::size_t i = 1; i < N; ++i) CHECK(sm.values[i] >= sm.values[i - 1]);

      TreeIndexMap map(base.grid.tree_depth());
      for (std::size_t k = 0; k < N; ++k) {
        double v = base.values[eval_set[k] - 1];
        for (const auto& idx : base.grid.path_indices(eval_set[k]))
          v += sm.corrections[map.column(idx)];
        CHECK(sm.values[k] == doctest::Approx(v).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("objectives match the dense reference solver") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t N = 2 + rng() % 7;
    auto base = noisy_curve(N, rng);
    auto eval_set = full_eval_set(N);
    for (int p : {1, 2}) {
      auto sm = smooth(base, eval_set, p);
      const double ref = reference_objective(base, eval_set, p);
      CHECK(sm.objective <= ref * (1 + 1e-6) + 1e-8);
      CHECK(sm.objective >= ref * (1 - 1e-4) - 1e-6);
    }
  }
}

TEST_CASE("mse ratio compares smoothed against noisy") {
  PrivateEcdf truth{EvaluationGrid({1.0, 2.0}), {0.4, 0.6}, 10, kNoiselessEpsilon};
  PrivateEcdf dp{EvaluationGrid({1.0, 2.0}), {0.6, 0.4}, 10, 1.0};
  auto sm = smooth(dp, {1, 2}, 2);
  const double r = mse_ratio(truth, dp, sm);
  CHECK(r < 1.0);  // [0.5, 0.5] is closer to the truth than [0.6, 0.4]
  CHECK_THROWS_AS(mse_ratio(dp, dp, sm), UndefinedRatioError);
}
