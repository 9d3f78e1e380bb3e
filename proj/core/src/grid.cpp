// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/grid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>

namespace dpecdf {

namespace {

// Relative slack when deciding whether an endpoint already sits on the
// lattice; counters accumulated rounding in z*psi.
constexpr double kLatticeSlack = 1e-9;

std::vector<double> lattice_points(double z_lo, double z_hi,
                                   const std::function<double(double)>& value_of) {
  std::vector<double> out;
  for (double z = z_lo; z <= z_hi; z += 1.0) out.push_back(value_of(z));
  return out;
}

std::vector<double> with_endpoints(std::vector<double> pts, double lo, double hi,
                                   double tol) {
  std::erase_if(pts, [&](double t) { return t < lo - tol || t > hi + tol; });
  if (pts.empty() || std::abs(pts.front() - lo) > tol) pts.insert(pts.begin(), lo);
  else pts.front() = lo;
  if (std::abs(pts.back() - hi) > tol) pts.push_back(hi);
  else pts.back() = hi;
  // Collapse coincident points so strict monotonicity holds.
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](double a, double b) { return std::abs(a - b) <= tol; }),
            pts.end());
  return pts;
}

std::string kind_name(EvaluationGrid::Kind k) {
  switch (k) {
    case EvaluationGrid::Kind::Uniform: return "uniform";
    case EvaluationGrid::Kind::Geometric: return "geometric";
    default: return "explicit";
  }
}

EvaluationGrid::Kind kind_from_name(const std::string& s) {
  if (s == "uniform") return EvaluationGrid::Kind::Uniform;
  if (s == "geometric") return EvaluationGrid::Kind::Geometric;
  if (s == "explicit") return EvaluationGrid::Kind::Explicit;
  throw InvalidParameterError("unknown grid kind: " + s);
}

}  // namespace

int tree_depth_for(std::size_t n_points) {
  int depth = 0;
  while ((std::size_t{1} << depth) < n_points) ++depth;
  return depth;
}

EvaluationGrid::EvaluationGrid(std::vector<double> points, Kind kind, double psi)
    : points_(std::move(points)), kind_(kind), psi_(psi) {
  if (points_.empty()) throw InvalidDomainError("grid needs at least one point");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1] < points_[i]))
      throw InvalidDomainError("grid points must be strictly increasing");
  }
  tree_depth_ = tree_depth_for(points_.size());
}

std::vector<NodeIndex> EvaluationGrid::path_indices(std::size_t i) const {
  if (i < 1 || i > points_.size())
    throw InvalidParameterError("grid index out of range");
  return dpecdf::path_indices(tree_depth_, i);
}

std::vector<NodeIndex> path_indices(int tree_depth, std::size_t i) {
  std::vector<NodeIndex> path;
  path.reserve(tree_depth + 1);
  for (int l = 0; l <= tree_depth; ++l) {
    std::size_t j = (i + (std::size_t{1} << l) - 1) >> l;  // ceil(i / 2^l)
    path.push_back({static_cast<std::int64_t>(j), l});
  }
  return path;
}

std::size_t EvaluationGrid::full_index_count() const {
  return (std::size_t{2} << tree_depth_) - 1;
}

EvaluationGrid make_uniform_grid(double lo, double hi, double psi) {
  if (!(lo < hi)) throw InvalidDomainError("require lo < hi");
  if (!(psi > 0)) throw InvalidParameterError("require psi > 0");
  const double tol = psi * kLatticeSlack;
  double z_lo = std::ceil(lo / psi - kLatticeSlack);
  double z_hi = std::floor(hi / psi + kLatticeSlack);
  auto pts = lattice_points(z_lo, z_hi, [&](double z) { return z * psi; });
  return EvaluationGrid(with_endpoints(std::move(pts), lo, hi, tol),
                        EvaluationGrid::Kind::Uniform, psi);
}

EvaluationGrid make_geometric_grid(double lo, double hi, double psi) {
  if (lo <= 0) throw InvalidDomainError("geometric grid requires lo > 0");
  if (!(lo < hi)) throw InvalidDomainError("require lo < hi");
  if (!(psi > 0)) throw InvalidParameterError("require psi > 0");
  double z_lo = std::ceil(std::log(lo) / psi - kLatticeSlack);
  double z_hi = std::floor(std::log(hi) / psi + kLatticeSlack);
  auto pts = lattice_points(z_lo, z_hi, [&](double z) { return std::exp(z * psi); });
  const double tol = lo * 1e-12 + hi * 1e-12;
  return EvaluationGrid(with_endpoints(std::move(pts), lo, hi, tol),
                        EvaluationGrid::Kind::Geometric, psi);
}

std::string EvaluationGrid::to_json() const {
  nlohmann::json j;
  j["lo"] = lo();
  j["hi"] = hi();
  j["kind"] = kind_name(kind_);
  j["psi"] = psi_;
  j["points"] = points_;
  return j.dump();
}

EvaluationGrid EvaluationGrid::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  EvaluationGrid grid(j.at("points").get<std::vector<double>>(),
                      kind_from_name(j.at("kind").get<std::string>()),
                      j.value("psi", 0.0));
  if (grid.lo() != j.at("lo").get<double>() || grid.hi() != j.at("hi").get<double>())
    throw InvalidDomainError("grid bounds do not match serialized points");
  return grid;
}

}  // namespace dpecdf
