// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_SMOOTHING_HPP
#define DPECDF_SMOOTHING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dpecdf/noise.hpp"
#include "dpecdf/solver.hpp"

namespace dpecdf {

struct UndefinedRatioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Column numbering for the full correction index set I[L], level-major.
class TreeIndexMap {
 public:
  explicit TreeIndexMap(int tree_depth);

  std::size_t size() const { return size_; }
  std::size_t column(const NodeIndex& idx) const;
  NodeIndex index_at(std::size_t column) const;
  int tree_depth() const { return tree_depth_; }

 private:
  int tree_depth_;
  std::size_t size_;
  std::vector<std::size_t> level_offset_;
};

// Monotone projection of a PrivateEcdf restricted to the eval set B.
// Values satisfy: F(tau_i) = base(tau_i) + sum of path corrections,
// nondecreasing over B, first >= 0, last <= 1.
struct SmoothedEcdf {
  EvaluationGrid grid;
  std::vector<std::size_t> eval_set;   // sorted 1-based grid indices
  std::vector<double> values;          // one per eval_set entry
  std::vector<double> corrections;     // nu over TreeIndexMap columns
  double objective = 0;                // sum |nu|^p
  int p = 2;

  std::string to_json() const;
  std::string to_csv() const;
};

// Minimize sum |nu_(j,l)|^p over tree corrections subject to monotone,
// boundary-feasible reconstruction on B. p = 1 solves an LP (positive/
// negative part splitting), p = 2 a convex QP. Smoothing is
// post-processing: it never touches a budget ledger.
SmoothedEcdf smooth(const PrivateEcdf& base, std::vector<std::size_t> eval_set,
                    int p, const SolverConfig& cfg = {});

// ||truth - smoothed||_2^2 / ||truth - dp||_2^2 over the smoothed eval set.
double mse_ratio(const PrivateEcdf& truth, const PrivateEcdf& dp,
                 const SmoothedEcdf& smoothed);

}  // namespace dpecdf

#endif  // DPECDF_SMOOTHING_HPP
