// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace dpecdf {

std::size_t ScoredDataset::positives() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(),
                    [](const Instance& r) { return r.label == 1; }));
}

double ScoredDataset::positive_fraction() const {
  if (records.empty()) return 0.0;
  return static_cast<double>(positives()) / static_cast<double>(records.size());
}

std::vector<double> ScoredDataset::scores() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const Instance& r : records) out.push_back(r.score);
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stod(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size() && std::isfinite(out);
}

}  // namespace

ScoredDataset ingest_csv(const std::string& path, const std::string& score_column,
                         const std::string& label_column, bool strict) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  const auto header = split_csv_line(line);

  auto column_of = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw DataError(path + ": missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t score_col = column_of(score_column);
  const bool want_label = !label_column.empty();
  const std::size_t label_col = want_label ? column_of(label_column) : 0;

  ScoredDataset out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    auto reject = [&](const std::string& why) {
      if (strict)
        throw DataError(path + ": line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() <= score_col || (want_label && fields.size() <= label_col)) {
      reject("too few fields");
      continue;
    }
    Instance rec;
    if (!parse_double(fields[score_col], rec.score)) {
      reject("unparseable score '" + fields[score_col] + "'");
      continue;
    }
    if (want_label) {
      const std::string& lf = fields[label_col];
      if (lf != "0" && lf != "1") {
        reject("label must be 0 or 1, got '" + lf + "'");
        continue;
      }
      rec.label = lf == "1" ? 1 : 0;
    }
    out.records.push_back(rec);
  }
  return out;
}

std::vector<double> gen_poisson_dataset(double lambda, std::size_t domain_size,
                                        std::uint64_t seed) {
  if (!(lambda > 0)) throw DataError("lambda must be positive");
  if (domain_size == 0) throw DataError("domain size must be positive");
  std::mt19937_64 rng(seed);
  std::poisson_distribution<long> pois(lambda);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(lambda * static_cast<double>(domain_size)));
  for (std::size_t i = 1; i <= domain_size; ++i) {
    const long count = pois(rng);
    for (long k = 0; k < count; ++k) values.push_back(static_cast<double>(i));
  }
  return values;
}

}  // namespace dpecdf
