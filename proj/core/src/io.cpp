// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <json.hpp>

namespace dpecdf {

std::string ecdf_to_csv(const PrivateEcdf& curve) {
  std::ostringstream os;
  os.precision(17);
  os << "tau,value\n";
  for (std::size_t i = 1; i <= curve.grid.n_points(); ++i)
    os << curve.grid.point(i) << ',' << curve.values[i - 1] << '\n';
  return os.str();
}

std::string ecdf_to_json(const PrivateEcdf& curve) {
  nlohmann::json j;
  j["n"] = curve.n;
  j["epsilon"] = std::isinf(curve.epsilon) ? nlohmann::json()
                                           : nlohmann::json(curve.epsilon);
  j["grid"] = nlohmann::json::parse(curve.grid.to_json());
  j["values"] = curve.values;
  return j.dump();
}

std::string series_to_csv(const std::string& x_name, const std::string& y_name,
                          const std::vector<SeriesPoint>& series) {
  std::ostringstream os;
  os.precision(17);
  os << x_name << ',' << y_name << "_mean," << y_name << "_std\n";
  for (const SeriesPoint& p : series)
    os << p.x << ',' << p.mean << ',' << p.stddev << '\n';
  return os.str();
}

std::string series_to_json(const std::string& x_name, const std::string& y_name,
                           const std::vector<SeriesPoint>& series) {
  nlohmann::json j = nlohmann::json::array();
  for (const SeriesPoint& p : series)
    j.push_back({{x_name, p.x},
                 {y_name + "_mean", p.mean},
                 {y_name + "_std", p.stddev}});
  return j.dump();
}

SeriesPoint summarize(double x, const std::vector<double>& sample) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  double mean = 0;
  for (double v : sample) mean += v;
  mean /= static_cast<double>(sample.size());
  double ss = 0;
  for (double v : sample) ss += (v - mean) * (v - mean);
  const double var =
      sample.size() > 1 ? ss / static_cast<double>(sample.size() - 1) : 0.0;
  return {x, mean, std::sqrt(var)};
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace dpecdf
