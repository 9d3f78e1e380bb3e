// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_DATA_HPP
#define DPECDF_DATA_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpecdf/aggregation.hpp"

namespace dpecdf {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScoredDataset {
  std::vector<Instance> records;

  std::size_t n() const { return records.size(); }
  std::size_t positives() const;
  double positive_fraction() const;
  std::vector<double> scores() const;
};

// Reads (score, label) rows from a CSV file with a header. The label
// column may be omitted for plain value datasets. Strict mode rejects
// the file on the first malformed row with a line-numbered diagnostic;
// otherwise malformed rows are skipped.
ScoredDataset ingest_csv(const std::string& path, const std::string& score_column,
                         const std::string& label_column = "", bool strict = true);

// Synthetic dataset: for each value i in [1, domain_size] the number of
// instances with that value is drawn Pois(lambda).
std::vector<double> gen_poisson_dataset(double lambda, std::size_t domain_size,
                                        std::uint64_t seed);

}  // namespace dpecdf

#endif  // DPECDF_DATA_HPP
