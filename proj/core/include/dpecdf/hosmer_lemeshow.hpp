// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_HOSMER_LEMESHOW_HPP
#define DPECDF_HOSMER_LEMESHOW_HPP

#include <string>
#include <vector>

#include "dpecdf/aggregation.hpp"
#include "dpecdf/budget.hpp"
#include "dpecdf/data.hpp"

namespace dpecdf {

struct HlResult {
  double H = 0;
  int Q = 0;
  int L = 0;
  double epsilon = kNoiselessEpsilon;
  std::vector<double> cuts;  // t_0 .. t_Q
  // Per-group statistics at count scale, Q entries each.
  std::vector<double> obs_pos, exp_pos, obs_neg, exp_neg;
  double floor_delta = 0.5;
  bool floor_applied = false;  // some E fell below floor_delta
  double p_value = 1.0;        // NaN when Q < 3 (df would be < 1)
  BudgetAccount ledger;

  int df() const { return Q - 2; }
  std::string to_json() const;
  std::string to_csv() const;
};

// DP Hosmer-Lemeshow statistic over Q score-quantile groups.
// Budget split: eps' = eps/(L+9); the quantile cut points come from an
// (L+1)eps'-DP tree ECDF over a uniform 2^L-point grid on [0,1]
// (binary-searched to width 1/2^(L+2)); each of the 4 per-group count
// statistics carries fresh Lap(1/eps') noise under singleton registry
// keys (-q, s) for E and (-q, s+2) for O. Ledger total is exactly eps.
// Expected counts are floored at floor_delta before dividing, since DP
// noise can push small groups near zero; the flag records whether the
// floor engaged. The backend must share `registry` and hold the
// dataset's records; generic kernels are required (FSS cannot serve
// the E/O statistics).
HlResult hl_statistic_dp(const ScoredDataset& data, int Q, double epsilon, int L,
                         AggregationBackend& backend, TreeNoiseRegistry& registry,
                         double floor_delta = 0.5);

}  // namespace dpecdf

#endif  // DPECDF_HOSMER_LEMESHOW_HPP
