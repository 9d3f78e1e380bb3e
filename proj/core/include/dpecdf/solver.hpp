// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_SOLVER_HPP
#define DPECDF_SOLVER_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dpecdf {

struct SolverConfig {
  double rel_tol = 1e-8;
  int max_iter = 200;
};

struct SolverResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double gap = 0;
  double primal_residual = 0;
  double dual_residual = 0;
};

struct ConvergenceError : std::runtime_error {
  double gap;
  double primal_residual;
  double dual_residual;
  ConvergenceError(const std::string& what, double gap_, double rp, double rd)
      : std::runtime_error(what), gap(gap_), primal_residual(rp), dual_residual(rd) {}
};

// Primal-dual interior-point method (Mehrotra predictor-corrector) for
//   minimize 1/2 x'Px + c'x  subject to  Gx <= h
// with P diagonal positive semidefinite. P + G'WG must be positive
// definite (holds for the smoothing LP/QP: the QP has P = 2I, the LP
// carries bound rows on every variable).
SolverResult solve_qp(const Eigen::SparseMatrix<double>& P,
                      const Eigen::VectorXd& c,
                      const Eigen::SparseMatrix<double>& G,
                      const Eigen::VectorXd& h, const SolverConfig& cfg = {});

}  // namespace dpecdf

#endif  // DPECDF_SOLVER_HPP
