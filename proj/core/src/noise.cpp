// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <json.hpp>

namespace dpecdf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Substream key for index (j, l): reproducible regardless of draw order.
std::uint64_t substream_seed(std::uint64_t seed, const NodeIndex& idx) {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc908ull);
  h = splitmix64(h ^ static_cast<std::uint64_t>(idx.j));
  h = splitmix64(h ^ static_cast<std::uint64_t>(idx.l));
  return h;
}

double uniform_open01(std::mt19937_64& rng) {
  // (0,1): never returns an exact endpoint.
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

}  // namespace

double laplace_from_uniform(double scale, double u) {
  double d = u - 0.5;
  double s = d >= 0 ? 1.0 : -1.0;
  return -scale * s * std::log1p(-2.0 * std::abs(d));
}

double sample_laplace(double scale, std::mt19937_64& rng) {
  if (!(scale > 0)) throw InvalidParameterError("Laplace scale must be positive");
  return laplace_from_uniform(scale, uniform_open01(rng));
}

double sample_gaussian(double sigma, std::mt19937_64& rng) {
  if (!(sigma > 0)) throw InvalidParameterError("Gaussian sigma must be positive");
  double u1 = uniform_open01(rng);
  double u2 = uniform_open01(rng);
  return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

void TreeNoiseRegistry::set_tree_spec(NoiseSpec spec) {
  std::lock_guard lock(mu_);
  if (tree_spec_set_ &&
      (tree_spec_.kind != spec.kind || tree_spec_.scale != spec.scale))
    throw std::logic_error("tree noise spec already set with a different policy");
  tree_spec_ = spec;
  tree_spec_set_ = true;
}

NoiseSpec TreeNoiseRegistry::tree_spec() const {
  std::lock_guard lock(mu_);
  return tree_spec_;
}

void TreeNoiseRegistry::register_singleton(NodeIndex idx, NoiseSpec spec) {
  if (idx.j >= 0)
    throw InvalidParameterError("singleton indices must have j < 0");
  std::lock_guard lock(mu_);
  auto [it, inserted] = singleton_specs_.emplace(idx, spec);
  if (!inserted && (it->second.kind != spec.kind || it->second.scale != spec.scale))
    throw std::logic_error("singleton index already registered with a different spec");
}

std::optional<NoiseSpec> TreeNoiseRegistry::spec_for(NodeIndex idx) const {
  std::lock_guard lock(mu_);
  if (idx.j < 0) {
    auto it = singleton_specs_.find(idx);
    if (it == singleton_specs_.end()) return std::nullopt;
    return it->second;
  }
  if (!tree_spec_set_) return std::nullopt;
  return tree_spec_;
}

double TreeNoiseRegistry::draw(NodeIndex idx, const NoiseSpec& spec) const {
  if (spec.kind == NoiseSpec::Kind::None || spec.scale == 0.0) return 0.0;
  std::mt19937_64 rng(substream_seed(seed_, idx));
  if (spec.kind == NoiseSpec::Kind::Laplace) return sample_laplace(spec.scale, rng);
  return sample_gaussian(spec.scale, rng);
}

double TreeNoiseRegistry::value(NodeIndex idx) {
  std::lock_guard lock(mu_);
  auto it = values_.find(idx);
  if (it != values_.end()) return it->second;
  NoiseSpec spec;
  if (idx.j < 0) {
    auto sit = singleton_specs_.find(idx);
    if (sit == singleton_specs_.end())
      throw std::out_of_range("unregistered singleton noise index");
    spec = sit->second;
  } else {
    if (!tree_spec_set_)
      throw std::logic_error("tree noise spec not set");
    spec = tree_spec_;
  }
  double v = draw(idx, spec);
  values_.emplace(idx, v);
  return v;
}

std::size_t TreeNoiseRegistry::drawn_count() const {
  std::lock_guard lock(mu_);
  return values_.size();
}

std::string TreeNoiseRegistry::unsafe_snapshot_json() const {
  std::lock_guard lock(mu_);
  nlohmann::json j;
  j["seed"] = seed_;
  auto arr = nlohmann::json::array();
  for (const auto& [idx, v] : values_) {
    NoiseSpec spec = tree_spec_;
    if (idx.j < 0) spec = singleton_specs_.at(idx);
    arr.push_back({{"j", idx.j}, {"l", idx.l}, {"value", v}, {"scale", spec.scale}});
  }
  std::sort(arr.begin(), arr.end(), [](const auto& a, const auto& b) {
    return std::tie(a.at("l").template get_ref<const std::int64_t&>(),
                    a.at("j").template get_ref<const std::int64_t&>()) <
           std::tie(b.at("l").template get_ref<const std::int64_t&>(),
                    b.at("j").template get_ref<const std::int64_t&>());
  });
  j["entries"] = arr;
  return j.dump();
}

PrivateEcdf noiseless_ecdf(std::vector<double> scores, const EvaluationGrid& grid) {
  if (scores.empty()) throw InvalidParameterError("empty dataset");
  std::sort(scores.begin(), scores.end());
  PrivateEcdf out{grid, {}, scores.size(), kNoiselessEpsilon};
  out.values.reserve(grid.n_points());
  const double n = static_cast<double>(scores.size());
  for (std::size_t i = 1; i <= grid.n_points(); ++i) {
    auto it = std::upper_bound(scores.begin(), scores.end(), grid.point(i));
    out.values.push_back(static_cast<double>(it - scores.begin()) / n);
  }
  return out;
}

PrivateEcdf dp_ecdf(std::vector<double> scores, const EvaluationGrid& grid,
                    double epsilon, TreeNoiseRegistry& registry,
                    BudgetAccount* account, const std::string& charge_tag,
                    Rational session_frac) {
  if (!(epsilon > 0)) throw InvalidParameterError("epsilon must be positive");
  PrivateEcdf out = noiseless_ecdf(std::move(scores), grid);
  const bool noiseless = std::isinf(epsilon);
  const int L = grid.tree_depth();
  registry.set_tree_spec(noiseless
                             ? NoiseSpec::none()
                             : NoiseSpec::laplace((L + 1) / epsilon));
  if (!noiseless) {
    const double n = static_cast<double>(out.n);
    for (std::size_t i = 1; i <= grid.n_points(); ++i) {
      double noise = 0;
      for (const NodeIndex& idx : grid.path_indices(i)) noise += registry.value(idx);
      out.values[i - 1] += noise / n;
    }
    if (account) account->charge(charge_tag, epsilon, session_frac);
  }
  out.epsilon = epsilon;
  return out;
}

namespace {

// Internal node: start offset a (absolute), level l; covers [a+1, a+2^l].
struct OffsetNode {
  int sign;
  std::int64_t offset;
  int level;
};

void prefix_rec(int L, std::int64_t d, std::int64_t b, int sign,
                std::vector<OffsetNode>& out);

void suffix_rec(int L, std::int64_t d, std::int64_t b, int sign,
                std::vector<OffsetNode>& out);

// 1_[d+1, b], with b - d in [1, 2^L].
void prefix_rec(int L, std::int64_t d, std::int64_t b, int sign,
                std::vector<OffsetNode>& out) {
  const std::int64_t r = b - d;
  if (L == 0) {
    out.push_back({sign, d, 0});
    return;
  }
  if (L == 1) {
    out.push_back({sign, d, r == 1 ? 0 : 1});
    return;
  }
  const std::int64_t q = std::int64_t{1} << (L - 2);
  if (r <= q) {
    prefix_rec(L - 2, d, b, sign, out);
  } else if (r <= 2 * q) {
    out.push_back({sign, d, L - 2});
    prefix_rec(L - 2, d + q, b, sign, out);
  } else if (r <= 3 * q) {
    out.push_back({sign, d, L - 1});
    prefix_rec(L - 2, d + 2 * q, b, sign, out);
  } else {
    out.push_back({sign, d, L});
    if (r < 4 * q) suffix_rec(L - 2, d + 3 * q, b + 1, -sign, out);
  }
}

// 1_[b, d+2^L], with b - d in [1, 2^L].
void suffix_rec(int L, std::int64_t d, std::int64_t b, int sign,
                std::vector<OffsetNode>& out) {
  const std::int64_t r = b - d;
  if (L == 0) {
    out.push_back({sign, d, 0});
    return;
  }
  if (L == 1) {
    if (r == 1) out.push_back({sign, d, 1});
    else out.push_back({sign, d + 1, 0});
    return;
  }
  const std::int64_t q = std::int64_t{1} << (L - 2);
  if (r <= q) {
    out.push_back({sign, d, L});
    if (r > 1) prefix_rec(L - 2, d, b - 1, -sign, out);
  } else if (r <= 2 * q) {
    out.push_back({sign, d + 2 * q, L - 1});
    suffix_rec(L - 2, d + q, b, sign, out);
  } else if (r <= 3 * q) {
    out.push_back({sign, d + 3 * q, L - 2});
    suffix_rec(L - 2, d + 2 * q, b, sign, out);
  } else {
    suffix_rec(L - 2, d + 3 * q, b, sign, out);
  }
}

std::vector<SignedNode> to_signed_nodes(const std::vector<OffsetNode>& nodes,
                                        std::int64_t base) {
  std::vector<SignedNode> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) {
    std::int64_t j = ((n.offset - base) >> n.level) + 1;
    out.push_back({n.sign, {j, n.level}});
  }
  return out;
}

}  // namespace

std::vector<SignedNode> decompose_interval(int tree_depth, std::int64_t d,
                                           std::int64_t b, IntervalSide side) {
  if (tree_depth < 0) throw InvalidParameterError("negative tree depth");
  const std::int64_t size = std::int64_t{1} << tree_depth;
  if (b - d < 1 || b - d > size)
    throw InvalidParameterError("b - d must lie in [1, 2^L]");
  std::vector<OffsetNode> nodes;
  if (side == IntervalSide::Prefix) prefix_rec(tree_depth, d, b, 1, nodes);
  else suffix_rec(tree_depth, d, b, 1, nodes);
  return to_signed_nodes(nodes, d);
}

std::vector<SignedNode> adjacent_shift_vector(int tree_depth, std::int64_t t1,
                                              std::int64_t t2) {
  if (tree_depth < 0) throw InvalidParameterError("negative tree depth");
  const std::int64_t size = std::int64_t{1} << tree_depth;
  if (t1 < 0 || t2 > size || t1 >= t2)
    throw InvalidParameterError("require 0 <= t1 < t2 <= 2^L");
  // Largest level with a multiple of 2^l inside [t1, t2); the split is the
  // smallest such multiple.
  int lm = tree_depth;
  std::int64_t split = 0;
  for (; lm >= 0; --lm) {
    const std::int64_t step = std::int64_t{1} << lm;
    split = ((t1 + step - 1) / step) * step;
    if (split < t2) break;
  }
  std::vector<OffsetNode> nodes;
  const std::int64_t step = std::int64_t{1} << lm;
  if (t1 < split) suffix_rec(lm, split - step, t1 + 1, 1, nodes);
  prefix_rec(lm, split, t2, 1, nodes);
  return to_signed_nodes(nodes, 0);
}

ContinualRelease::ContinualRelease(std::size_t horizon, Kind kind, double param,
                                   std::uint64_t seed)
    : horizon_(horizon),
      tree_depth_(tree_depth_for(horizon)),
      kind_(kind),
      param_(param),
      registry_(seed) {
  if (horizon == 0) throw InvalidParameterError("horizon must be positive");
  if (!(param > 0)) throw InvalidParameterError("privacy parameter must be positive");
  const double half_terms = std::ceil((tree_depth_ + 1) / 2.0);
  if (kind == Kind::Laplace) {
    registry_.set_tree_spec(std::isinf(param)
                                ? NoiseSpec::none()
                                : NoiseSpec::laplace(half_terms / param));
  } else {
    registry_.set_tree_spec(NoiseSpec::gaussian(std::sqrt(half_terms) * param));
  }
}

ContinualRelease ContinualRelease::laplace(std::size_t horizon, double epsilon,
                                           std::uint64_t seed) {
  return ContinualRelease(horizon, Kind::Laplace, epsilon, seed);
}

ContinualRelease ContinualRelease::gaussian(std::size_t horizon, double z,
                                            std::uint64_t seed) {
  return ContinualRelease(horizon, Kind::Gaussian, z, seed);
}

double ContinualRelease::per_term_scale() const {
  return registry_.tree_spec().scale;
}

double ContinualRelease::per_term_variance() const {
  const double half_terms = std::ceil((tree_depth_ + 1) / 2.0);
  if (kind_ == Kind::Gaussian) return half_terms * param_ * param_;
  const double b = half_terms / param_;
  return 2.0 * b * b;
}

double ContinualRelease::zcdp_rho() const {
  if (kind_ != Kind::Gaussian)
    throw std::logic_error("zCDP accounting applies to the Gaussian variant");
  return 1.0 / (2.0 * param_ * param_);
}

double ContinualRelease::release(double x_t) {
  if (t_ >= horizon_) throw StreamExhaustedError("stream horizon reached");
  if (std::abs(x_t) > 1.0)
    throw SensitivityViolationError("stream element outside [-1, 1]");
  ++t_;
  running_sum_ += x_t;
  double noise = 0;
  for (const NodeIndex& idx : path_indices(tree_depth_, t_))
    noise += registry_.value(idx);
  return running_sum_ + noise;
}

}  // namespace dpecdf
