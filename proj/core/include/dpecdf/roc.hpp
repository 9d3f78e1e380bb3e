// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_ROC_HPP
#define DPECDF_ROC_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "dpecdf/data.hpp"
#include "dpecdf/grid.hpp"
#include "dpecdf/noise.hpp"
#include "dpecdf/smoothing.hpp"

namespace dpecdf {

struct DegenerateClassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonMonotoneRocError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ROC curve over grid thresholds. tp_counts / fp_counts hold the
// underlying count curves at frequency-of-n scale; tpr / fpr are their
// ratios to the value at tau_N. A noiseless curve is monotone from
// (0,0)-adjacent values up to (1,1); a DP curve need not be.
struct RocCurve {
  EvaluationGrid grid;
  std::vector<double> tp_counts;
  std::vector<double> fp_counts;
  std::vector<double> tpr;
  std::vector<double> fpr;
  std::size_t n = 0;
  double epsilon = kNoiselessEpsilon;

  bool is_monotone(double tol = 0.0) const;
  std::string to_json() const;
  std::string to_csv() const;
};

// Publishes the TP and FP count curves with two independent tree
// mechanisms (one registry each), eps_total/2 per curve; the ratios are
// normalized by the DP curve values at tau_N, with no extra query.
RocCurve dp_roc(const ScoredDataset& data, const EvaluationGrid& grid,
                double epsilon_total, TreeNoiseRegistry& tp_registry,
                TreeNoiseRegistry& fp_registry, BudgetAccount* account = nullptr);

// Monotone-smooths the two count curves (p-norm objective) and rebuilds
// the ratios. Post-processing; no budget effect.
RocCurve smooth_roc(const RocCurve& curve, int p, const SolverConfig& cfg = {});

// Integral of |TPR_a - TPR_b| over FPR in [0,1], treating each curve as
// the piecewise-linear interpolant of its (FPR, TPR) points padded with
// (0,0) and (1,1), integrated exactly over the merged breakpoints.
// Both inputs must be monotone (smooth a DP curve first).
double roc_symmetric_difference(const RocCurve& a, const RocCurve& b);

}  // namespace dpecdf

#endif  // DPECDF_ROC_HPP
