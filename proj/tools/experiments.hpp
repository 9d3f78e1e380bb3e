// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_TOOLS_EXPERIMENTS_HPP
#define DPECDF_TOOLS_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dpecdf::tools {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int reps = 100;
  double lambda = 3.0;
  std::size_t domain = std::size_t{1} << 10;
  int p_norm = 2;
  int Q = 10;
  int L = 4;
  std::string format = "csv";  // csv | json
  std::string out;             // empty or "-" means stdout
};

// Known names: smooth-ratio-eps, smooth-ratio-lambda, invcdf-mse,
// roc-symmdiff, hl-mse, smooth-runtime. Writes the data series to
// cfg.out and, when cfg.out is a real path, a JSON manifest beside it.
void run_experiment(const std::string& name, const ExperimentConfig& cfg);

}  // namespace dpecdf::tools

#endif
