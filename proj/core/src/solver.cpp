// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/solver.hpp"

#include <algorithm>
#include <cmath>

namespace dpecdf {

namespace {

// Largest alpha in (0, 1] with v + alpha*dv >= (1 - eta) * v elementwise
// positive; fraction-to-boundary rule.
double step_length(const Eigen::VectorXd& v, const Eigen::VectorXd& dv,
                   double eta = 0.995) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0) alpha = std::min(alpha, -eta * v[i] / dv[i]);
  }
  return alpha;
}

}  // namespace

SolverResult solve_qp(const Eigen::SparseMatrix<double>& P,
                      const Eigen::VectorXd& c,
                      const Eigen::SparseMatrix<double>& G,
                      const Eigen::VectorXd& h, const SolverConfig& cfg) {
  const Eigen::Index nvar = c.size();
  const Eigen::Index m = h.size();
  const Eigen::SparseMatrix<double> Gt = G.transpose();

  Eigen::VectorXd x = Eigen::VectorXd::Zero(nvar);
  Eigen::VectorXd s = Eigen::VectorXd::Ones(m);
  Eigen::VectorXd z = Eigen::VectorXd::Ones(m);
  // Start s at a comfortable distance from the constraint surface.
  for (Eigen::Index i = 0; i < m; ++i) s[i] = std::max(1.0, -h[i] + 1.0);

  const double scale = 1.0 + std::max(h.lpNorm<Eigen::Infinity>(),
                                      c.size() ? c.lpNorm<Eigen::Infinity>() : 0.0);
  const double tol = cfg.rel_tol * scale;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool pattern_analyzed = false;

  double mu = 1, rp_norm = 0, rd_norm = 0;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    Eigen::VectorXd r_d = P * x + c + Gt * z;
    Eigen::VectorXd r_p = G * x + s - h;
    mu = s.dot(z) / static_cast<double>(m);
    rp_norm = r_p.lpNorm<Eigen::Infinity>();
    rd_norm = r_d.lpNorm<Eigen::Infinity>();
    if (mu < tol && rp_norm < tol && rd_norm < tol)
      return {x, iter, mu, rp_norm, rd_norm};

    Eigen::VectorXd w = z.cwiseQuotient(s);
    Eigen::SparseMatrix<double> M =
        P + Eigen::SparseMatrix<double>(Gt * w.asDiagonal() * G);
    if (!pattern_analyzed) {
      ldlt.analyzePattern(M);
      pattern_analyzed = true;
    }
    ldlt.factorize(M);
    if (ldlt.info() != Eigen::Success) {
      // Retry with a diagonal shift if the system lost definiteness.
      Eigen::SparseMatrix<double> reg(nvar, nvar);
      reg.setIdentity();
      M += reg * (1e-10 * (1.0 + w.maxCoeff()));
      ldlt.factorize(M);
      if (ldlt.info() != Eigen::Success)
        throw ConvergenceError("interior-point factorization failed", mu, rp_norm,
                               rd_norm);
    }

    auto solve_direction = [&](const Eigen::VectorXd& r_c, Eigen::VectorXd& dx,
                               Eigen::VectorXd& ds, Eigen::VectorXd& dz) {
      Eigen::VectorXd rhs =
          -r_d - Gt * (w.cwiseProduct(r_p) - r_c.cwiseQuotient(s));
      dx = ldlt.solve(rhs);
      dz = w.cwiseProduct(G * dx + r_p) - r_c.cwiseQuotient(s);
      ds = -r_p - G * dx;
    };

    // Predictor.
    Eigen::VectorXd dx_a, ds_a, dz_a;
    solve_direction(s.cwiseProduct(z), dx_a, ds_a, dz_a);
    double ap = step_length(s, ds_a);
    double ad = step_length(z, dz_a);
    double mu_aff = (s + ap * ds_a).dot(z + ad * dz_a) / static_cast<double>(m);
    double sigma = std::pow(mu_aff / mu, 3.0);

    // Corrector.
    Eigen::VectorXd r_c = s.cwiseProduct(z) + ds_a.cwiseProduct(dz_a) -
                          Eigen::VectorXd::Constant(m, sigma * mu);
    Eigen::VectorXd dx, ds, dz;
    solve_direction(r_c, dx, ds, dz);
    ap = step_length(s, ds);
    ad = step_length(z, dz);

    x += ap * dx;
    s += ap * ds;
    z += ad * dz;
  }
  throw ConvergenceError("interior-point iteration cap reached", mu, rp_norm,
                         rd_norm);
}

}  // namespace dpecdf
