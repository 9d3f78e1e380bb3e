// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_GRID_HPP
#define DPECDF_GRID_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpecdf {

struct InvalidDomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A tree node index: level l in [0, L], position j in [ceil(2^(L-l))].
// Negative j is reserved for application-registered singleton noise.
struct NodeIndex {
  std::int64_t j = 0;
  int l = 0;

  friend bool operator==(const NodeIndex&, const NodeIndex&) = default;
};

// Ordered evaluation thresholds tau_1..tau_N with the dyadic index
// arithmetic of the binary noise tree over [1, 2^L], L = ceil(log2 N).
// Indices N+1..2^L are virtual and alias tau_N; they never carry
// published values. Bounds lo/hi are public configuration supplied by
// the caller, never derived from data.
class EvaluationGrid {
 public:
  enum class Kind { Uniform, Geometric, Explicit };

  // Points must be strictly increasing and nonempty.
  explicit EvaluationGrid(std::vector<double> points, Kind kind = Kind::Explicit,
                          double psi = 0.0);

  std::size_t n_points() const { return points_.size(); }
  int tree_depth() const { return tree_depth_; }
  double lo() const { return points_.front(); }
  double hi() const { return points_.back(); }
  double point(std::size_t i) const { return points_.at(i - 1); }  // 1-based
  const std::vector<double>& points() const { return points_; }
  Kind kind() const { return kind_; }
  double psi() const { return psi_; }

  // Leaf-to-root noise indices of grid index i: {(ceil(i/2^l), l) : l in [0,L]}.
  std::vector<NodeIndex> path_indices(std::size_t i) const;

  // |I[L]| = 2^(L+1) - 1.
  std::size_t full_index_count() const;

  std::string to_json() const;
  static EvaluationGrid from_json(const std::string& text);

 private:
  std::vector<double> points_;
  int tree_depth_;
  Kind kind_;
  double psi_;
};

// Uniform lattice psi*Z intersected with [lo, hi], endpoints inserted when
// they are not on the lattice.
EvaluationGrid make_uniform_grid(double lo, double hi, double psi);

// Geometric lattice {e^(psi*z)} intersected with [lo, hi], endpoints
// inserted. Requires 0 < lo < hi.
EvaluationGrid make_geometric_grid(double lo, double hi, double psi);

// Depth of the noise tree for a grid of n points.
int tree_depth_for(std::size_t n_points);

// Path indices without a grid object (i in [1, 2^L]).
std::vector<NodeIndex> path_indices(int tree_depth, std::size_t i);

}  // namespace dpecdf

// Hash support so NodeIndex can key unordered containers.
template <>
struct std::hash<dpecdf::NodeIndex> {
  std::size_t operator()(const dpecdf::NodeIndex& idx) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(idx.j) * 0x9e3779b97f4a7c15ull;
    h ^= static_cast<std::uint64_t>(idx.l) + 0x517cc1b727220a95ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

#endif  // DPECDF_GRID_HPP
