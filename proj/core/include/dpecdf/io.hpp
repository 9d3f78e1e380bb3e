// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_IO_HPP
#define DPECDF_IO_HPP

#include <string>
#include <vector>

#include "dpecdf/noise.hpp"

namespace dpecdf {

std::string ecdf_to_csv(const PrivateEcdf& curve);
std::string ecdf_to_json(const PrivateEcdf& curve);

// One experiment sample point: x-axis value, mean and standard deviation
// over repetitions.
struct SeriesPoint {
  double x = 0;
  double mean = 0;
  double stddev = 0;
};

std::string series_to_csv(const std::string& x_name, const std::string& y_name,
                          const std::vector<SeriesPoint>& series);
std::string series_to_json(const std::string& x_name, const std::string& y_name,
                           const std::vector<SeriesPoint>& series);

// Mean and sample standard deviation of a nonempty sample.
SeriesPoint summarize(double x, const std::vector<double>& sample);

// Writes to the path, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& content);

}  // namespace dpecdf

#endif  // DPECDF_IO_HPP
