// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/aggregation.hpp"

#include <cmath>
#include <numeric>
#include <json.hpp>

#include "dpecdf/fss.hpp"

namespace dpecdf {

Kernel Kernel::threshold_le(double tau) {
  Kernel k;
  k.kind_ = Kind::ThresholdLE;
  k.tau_ = tau;
  return k;
}

Kernel Kernel::generic(std::function<double(const Instance&)> fn) {
  Kernel k;
  k.kind_ = Kind::Generic;
  k.fn_ = std::move(fn);
  return k;
}

double Kernel::operator()(const Instance& x) const {
  if (kind_ == Kind::ThresholdLE) return x.score <= tau_ ? 1.0 : 0.0;
  return fn_(x);
}

void CostMeter::record(Role role, std::uint64_t bytes, std::uint64_t messages) {
  switch (role) {
    case Role::Party:
      report_.party_messages += messages;
      report_.party_bytes += bytes;
      break;
    case Role::Server:
      report_.server_messages += messages;
      report_.server_bytes += bytes;
      break;
    case Role::Aggregator:
      report_.aggregator_messages += messages;
      report_.aggregator_bytes += bytes;
      break;
  }
}

std::string CostReport::to_json() const {
  nlohmann::json j;
  j["messages_sent"] = messages_sent();
  j["bytes_sent"] = bytes_sent();
  j["rounds"] = rounds;
  j["party"] = {{"messages", party_messages}, {"bytes", party_bytes}};
  j["server"] = {{"messages", server_messages}, {"bytes", server_bytes}};
  j["aggregator"] = {{"messages", aggregator_messages}, {"bytes", aggregator_bytes}};
  return j.dump();
}

double AggregationBackend::publisher_noise(TreeNoiseRegistry& registry,
                                           const std::vector<NodeIndex>& noise_indices,
                                           std::size_t n) const {
  double sum = 0;
  for (const NodeIndex& idx : noise_indices) sum += registry.value(idx);
  return sum / static_cast<double>(n);
}

PlaintextBackend::PlaintextBackend(std::vector<Instance> instances,
                                   TreeNoiseRegistry& registry)
    : instances_(std::move(instances)), registry_(registry) {
  if (instances_.empty()) throw InvalidParameterError("no parties");
}

double PlaintextBackend::u_stat(const Kernel& kernel,
                                const std::vector<NodeIndex>& noise_indices) {
  meter_.bump_round();
  double sum = 0;
  for (const Instance& x : instances_) {
    sum += kernel(x);
    meter_.record(Role::Party, sizeof(double));  // party -> curator
  }
  const double published =
      sum / static_cast<double>(instances_.size()) +
      publisher_noise(registry_, noise_indices, instances_.size());
  meter_.record(Role::Aggregator, sizeof(double));  // publication
  return published;
}

std::uint64_t fixed_point_encode(double value) {
  const double scaled = std::ldexp(value, kFixedPointFractionBits);
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(scaled)));
}

double fixed_point_decode(std::uint64_t value) {
  return std::ldexp(static_cast<double>(static_cast<std::int64_t>(value)),
                    -kFixedPointFractionBits);
}

std::vector<std::uint64_t> additive_share(std::uint64_t value, std::size_t m,
                                          std::mt19937_64& rng) {
  if (m < 2) throw InvalidParameterError("need at least two shares");
  std::vector<std::uint64_t> shares(m);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    shares[i] = rng();
    acc += shares[i];
  }
  shares[m - 1] = value - acc;  // wraps mod 2^64
  return shares;
}

AddShareBackend::AddShareBackend(std::vector<Instance> instances,
                                 TreeNoiseRegistry& registry,
                                 std::size_t server_count, std::uint64_t share_seed)
    : instances_(std::move(instances)),
      registry_(registry),
      server_count_(server_count),
      share_rng_(share_seed) {
  if (instances_.empty()) throw InvalidParameterError("no parties");
  if (server_count_ < 2) throw InvalidParameterError("need at least two servers");
}

double AddShareBackend::u_stat(const Kernel& kernel,
                               const std::vector<NodeIndex>& noise_indices) {
  std::vector<std::uint64_t> server_sums(server_count_, 0);
  meter_.bump_round();
  for (const Instance& x : instances_) {
    auto shares = additive_share(fixed_point_encode(kernel(x)), server_count_,
                                 share_rng_);
    for (std::size_t s = 0; s < server_count_; ++s) {
      server_sums[s] += shares[s];
      meter_.record(Role::Party, sizeof(std::uint64_t));  // party -> server s
    }
  }
  meter_.bump_round();
  std::uint64_t total = server_sums[0];
  for (std::size_t s = 1; s < server_count_; ++s) {
    total += server_sums[s];
    meter_.record(Role::Server, sizeof(std::uint64_t));  // server s -> publisher
  }
  const double published =
      fixed_point_decode(total) / static_cast<double>(instances_.size()) +
      publisher_noise(registry_, noise_indices, instances_.size());
  meter_.record(Role::Aggregator, sizeof(double));
  return published;
}

std::vector<double> evaluate_curve_pointwise(AggregationBackend& backend,
                                             const EvaluationGrid& grid,
                                             const std::vector<std::size_t>& eval_set,
                                             double epsilon,
                                             TreeNoiseRegistry& registry) {
  if (!(epsilon > 0)) throw InvalidParameterError("epsilon must be positive");
  const int L = grid.tree_depth();
  registry.set_tree_spec(std::isinf(epsilon)
                             ? NoiseSpec::none()
                             : NoiseSpec::laplace((L + 1) / epsilon));
  std::vector<double> values;
  values.reserve(eval_set.size());
  for (std::size_t i : eval_set) {
    values.push_back(backend.u_stat(Kernel::threshold_le(grid.point(i)),
                                    grid.path_indices(i)));
  }
  return values;
}

std::unique_ptr<AggregationBackend> make_backend(const std::string& config,
                                                 std::vector<Instance> instances,
                                                 const EvaluationGrid& grid,
                                                 TreeNoiseRegistry& registry,
                                                 std::uint64_t seed) {
  if (config == "plaintext")
    return std::make_unique<PlaintextBackend>(std::move(instances), registry);
  if (config.rfind("addshare:m=", 0) == 0) {
    const std::size_t m = std::stoul(config.substr(11));
    return std::make_unique<AddShareBackend>(std::move(instances), registry, m,
                                             seed);
  }
  if (config == "fss:m=2" || config == "fss")
    return std::make_unique<FssBackend>(std::move(instances), grid, registry, seed);
  throw InvalidParameterError("unknown backend config: " + config);
}

}  // namespace dpecdf
