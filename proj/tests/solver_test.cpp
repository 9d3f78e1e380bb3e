// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "dpecdf/solver.hpp"
#include "support/reference_solver.hpp"

using namespace dpecdf;

namespace {

Eigen::SparseMatrix<double> sparse_of(const Eigen::MatrixXd& m) {
  return m.sparseView();
}

Eigen::SparseMatrix<double> diag_sparse(const Eigen::VectorXd& d) {
  Eigen::SparseMatrix<double> out(d.size(), d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) out.insert(i, i) = d[i];
  out.makeCompressed();
  return out;
}

}  // namespace

TEST_CASE("bound-constrained scalar QP") {
  // min (x-1)^2 s.t. x <= 0.5
  Eigen::VectorXd c(1), h(1);
  c << -2;
  h << 0.5;
  Eigen::MatrixXd G(1, 1);
  G << 1;
  auto res = solve_qp(diag_sparse(Eigen::VectorXd::Constant(1, 2.0)), c,
                      sparse_of(G), h);
  CHECK(res.x[0] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("box LP finds the lower corner") {
  // min x s.t. -x <= 0, x <= 3
  Eigen::VectorXd c(1), h(2);
  c << 1;
  h << 0, 3;
  Eigen::MatrixXd G(2, 1);
  G << -1, 1;
  auto res = solve_qp(diag_sparse(Eigen::VectorXd::Zero(1)), c, sparse_of(G), h);
  CHECK(res.x[0] == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("random diagonal QPs agree with the reference solver") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const int m = n + 1 + static_cast<int>(rng() % 6);
    Eigen::VectorXd d = Eigen::VectorXd::Constant(n, 2.0);
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c[i] = unif(rng);
    Eigen::MatrixXd G(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = unif(rng);
    Eigen::VectorXd x0(n);
    for (int i = 0; i < n; ++i) x0[i] = unif(rng);
    Eigen::VectorXd h = G * x0;
    for (int i = 0; i < m; ++i) h[i] += 0.1 + 0.9 * std::abs(unif(rng));

    auto res = solve_qp(diag_sparse(d), c, sparse_of(G), h);
    auto ref = refsolve::barrier_solve(Eigen::MatrixXd(d.asDiagonal()), c, G, h, x0);

    auto objective = [&](const Eigen::VectorXd& x) {
      return 0.5 * x.dot(d.asDiagonal() * x) + c.dot(x);
    };
    CHECK(objective(res.x) ==
          doctest::Approx(objective(ref)).epsilon(1e-6));
    CHECK(((G * res.x - h).array() <= 1e-7).all());
  }
}

TEST_CASE("infeasible-looking problems still satisfy constraints at optimum") {
  // min x^2 s.t. x <= -5 : optimum at the boundary.
  Eigen::VectorXd c(1), h(1);
  c << 0;
  h << -5;
  Eigen::MatrixXd G(1, 1);
  G << 1;
  auto res = solve_qp(diag_sparse(Eigen::VectorXd::Constant(1, 2.0)), c,
                      sparse_of(G), h);
  CHECK(res.x[0] == doctest::Approx(-5.0).epsilon(1e-6));
}
