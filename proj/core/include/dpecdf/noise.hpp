// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_NOISE_HPP
#define DPECDF_NOISE_HPP

#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "dpecdf/budget.hpp"
#include "dpecdf/grid.hpp"

namespace dpecdf {

// Epsilon sentinel that disables sampling and budget charging.
inline constexpr double kNoiselessEpsilon = std::numeric_limits<double>::infinity();

struct NoiseSpec {
  enum class Kind { None, Laplace, Gaussian };
  Kind kind = Kind::None;
  double scale = 0.0;  // Laplace scale b, or Gaussian sigma

  static NoiseSpec none() { return {Kind::None, 0.0}; }
  static NoiseSpec laplace(double b) { return {Kind::Laplace, b}; }
  static NoiseSpec gaussian(double sigma) { return {Kind::Gaussian, sigma}; }
};

struct StreamExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SensitivityViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Laplace quantile transform: u in (0,1), median at u = 0.5.
double laplace_from_uniform(double scale, double u);

// Inverse-CDF draw from Lap(b).
double sample_laplace(double scale, std::mt19937_64& rng);

// Box-Muller draw from N(0, sigma^2).
double sample_gaussian(double sigma, std::mt19937_64& rng);

// Persistent store of drawn noise values at count scale, keyed by tree
// node (j >= 1) or application singleton (j < 0). Values are exactly-once:
// every index is backed by its own PRNG substream keyed by (seed, j, l),
// so a value is the same no matter when or in which order it is first read.
// Thread-safe draw-or-get.
class TreeNoiseRegistry {
 public:
  explicit TreeNoiseRegistry(std::uint64_t seed) : seed_(seed) {}

  // Distribution for tree indices (j >= 1). Must be set before reads.
  void set_tree_spec(NoiseSpec spec);
  NoiseSpec tree_spec() const;

  // Singleton indices (j < 0) carry their own caller-declared spec.
  void register_singleton(NodeIndex idx, NoiseSpec spec);

  // Draw-or-get the value at count scale.
  double value(NodeIndex idx);

  std::optional<NoiseSpec> spec_for(NodeIndex idx) const;
  std::uint64_t seed() const { return seed_; }
  std::size_t drawn_count() const;

  // Audit snapshot. Noise values are secret; only expose behind an
  // explicit unsafe flag at the tool level.
  std::string unsafe_snapshot_json() const;

 private:
  double draw(NodeIndex idx, const NoiseSpec& spec) const;

  std::uint64_t seed_;
  NoiseSpec tree_spec_{};
  bool tree_spec_set_ = false;
  std::unordered_map<NodeIndex, NoiseSpec> singleton_specs_;
  std::unordered_map<NodeIndex, double> values_;
  mutable std::mutex mu_;
};

// Grid-indexed DP curve at frequency scale. Values may leave [0,1] and
// need not be monotone.
struct PrivateEcdf {
  EvaluationGrid grid;
  std::vector<double> values;  // index i-1 holds F(tau_i)
  std::size_t n = 0;
  double epsilon = kNoiselessEpsilon;
};

// Exact (noise-free) ECDF over the grid. Scores need not be sorted.
PrivateEcdf noiseless_ecdf(std::vector<double> scores, const EvaluationGrid& grid);

// Tree-mechanism DP ECDF: each point gets the L+1 noise terms on its
// leaf-to-root path, Lap((L+1)/eps) at count scale, divided by n.
// Charges eps once to the account (whole curve) unless noiseless.
PrivateEcdf dp_ecdf(std::vector<double> scores, const EvaluationGrid& grid,
                    double epsilon, TreeNoiseRegistry& registry,
                    BudgetAccount* account = nullptr,
                    const std::string& charge_tag = "ecdf",
                    Rational session_frac = Rational(1, 1));

struct SignedNode {
  int sign = 1;  // +1 or -1
  NodeIndex node;

  friend bool operator==(const SignedNode&, const SignedNode&) = default;
};

enum class IntervalSide { Prefix, Suffix };

// Signed combination of tree nodes over base offset d reconstructing
// 1_[d+1, b] (Prefix) or 1_[b, d+2^L] (Suffix), with at most
// ceil((L+1)/2) nonzero coefficients. Node (j, l) denotes the indicator
// of [d+(j-1)*2^l+1, d+j*2^l]; returned j values are relative to d.
std::vector<SignedNode> decompose_interval(int tree_depth, std::int64_t d,
                                           std::int64_t b, IntervalSide side);

// Signed combination over the full tree I[L] reconstructing
// 1_[t1+1, t2], with at most L+1 nonzeros.
std::vector<SignedNode> adjacent_shift_vector(int tree_depth, std::int64_t t1,
                                              std::int64_t t2);

// Running prefix sums of a bounded stream (|x_t| <= 1) under DP,
// reusing tree path noise across releases.
class ContinualRelease {
 public:
  enum class Kind { Laplace, Gaussian };

  // Laplace variant: per-term scale ceil((L+1)/2)/eps.
  static ContinualRelease laplace(std::size_t horizon, double epsilon,
                                  std::uint64_t seed);
  // Gaussian variant: per-term variance ceil((L+1)/2)*z^2; 1/(2z^2)-zCDP.
  static ContinualRelease gaussian(std::size_t horizon, double z,
                                   std::uint64_t seed);

  // Publish s_t for the next stream element.
  double release(double x_t);

  std::size_t horizon() const { return horizon_; }
  int tree_depth() const { return tree_depth_; }
  Kind kind() const { return kind_; }
  double per_term_scale() const;     // Laplace b (Laplace variant)
  double per_term_variance() const;  // noise variance per term
  double zcdp_rho() const;           // Gaussian variant: 1/(2z^2)
  TreeNoiseRegistry& registry() { return registry_; }

 private:
  ContinualRelease(std::size_t horizon, Kind kind, double param,
                   std::uint64_t seed);

  std::size_t horizon_;
  int tree_depth_;
  Kind kind_;
  double param_;  // epsilon or z
  TreeNoiseRegistry registry_;
  std::size_t t_ = 0;
  double running_sum_ = 0.0;
};

}  // namespace dpecdf

#endif  // DPECDF_NOISE_HPP
