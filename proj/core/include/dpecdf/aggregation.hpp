// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_AGGREGATION_HPP
#define DPECDF_AGGREGATION_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dpecdf/noise.hpp"

namespace dpecdf {

struct Instance {
  double score = 0;
  int label = 0;
};

// Order-1 kernel. Threshold kernels get a dedicated representation so
// backends that only support comparisons (FSS) can recognize them.
class Kernel {
 public:
  enum class Kind { ThresholdLE, Generic };

  static Kernel threshold_le(double tau);
  static Kernel generic(std::function<double(const Instance&)> fn);

  Kind kind() const { return kind_; }
  double tau() const { return tau_; }
  double operator()(const Instance& x) const;

 private:
  Kind kind_ = Kind::Generic;
  double tau_ = 0;
  std::function<double(const Instance&)> fn_;
};

enum class Role { Party, Server, Aggregator };

struct CostReport {
  std::uint64_t party_messages = 0;
  std::uint64_t party_bytes = 0;
  std::uint64_t server_messages = 0;
  std::uint64_t server_bytes = 0;
  std::uint64_t aggregator_messages = 0;
  std::uint64_t aggregator_bytes = 0;
  std::uint64_t rounds = 0;

  std::uint64_t messages_sent() const {
    return party_messages + server_messages + aggregator_messages;
  }
  std::uint64_t bytes_sent() const {
    return party_bytes + server_bytes + aggregator_bytes;
  }
  std::string to_json() const;
};

class CostMeter {
 public:
  void record(Role role, std::uint64_t bytes, std::uint64_t messages = 1);
  void bump_round() { ++report_.rounds; }
  const CostReport& report() const { return report_; }

 private:
  CostReport report_;
};

// The private-sum publication contract: publishes U_phi(X) plus the
// frequency-scale sum of the requested registry noise terms. All
// backends publish the identical value under a shared registry seed
// (the sharing backend up to fixed-point rounding).
class AggregationBackend {
 public:
  virtual ~AggregationBackend() = default;

  virtual double u_stat(const Kernel& kernel,
                        const std::vector<NodeIndex>& noise_indices) = 0;
  virtual std::size_t party_count() const = 0;
  const CostReport& cost_report() const { return meter_.report(); }

 protected:
  // Count-scale registry noise divided by n, added by the publisher.
  double publisher_noise(TreeNoiseRegistry& registry,
                         const std::vector<NodeIndex>& noise_indices,
                         std::size_t n) const;
  CostMeter meter_;
};

// Trusted-curator reference backend: parties send plaintext kernel
// evaluations to the curator.
class PlaintextBackend : public AggregationBackend {
 public:
  PlaintextBackend(std::vector<Instance> instances, TreeNoiseRegistry& registry);

  double u_stat(const Kernel& kernel,
                const std::vector<NodeIndex>& noise_indices) override;
  std::size_t party_count() const override { return instances_.size(); }

 private:
  std::vector<Instance> instances_;
  TreeNoiseRegistry& registry_;
};

inline constexpr int kFixedPointFractionBits = 20;

std::uint64_t fixed_point_encode(double value);
double fixed_point_decode(std::uint64_t value);

// Splits value into m shares summing to value mod 2^64; any m-1 shares
// are uniform.
std::vector<std::uint64_t> additive_share(std::uint64_t value, std::size_t m,
                                          std::mt19937_64& rng);

// Honest-but-curious additive secret sharing over m servers; server 1
// is the publisher and holds the registry handle.
class AddShareBackend : public AggregationBackend {
 public:
  AddShareBackend(std::vector<Instance> instances, TreeNoiseRegistry& registry,
                  std::size_t server_count, std::uint64_t share_seed);

  double u_stat(const Kernel& kernel,
                const std::vector<NodeIndex>& noise_indices) override;
  std::size_t party_count() const override { return instances_.size(); }
  std::size_t server_count() const { return server_count_; }

 private:
  std::vector<Instance> instances_;
  TreeNoiseRegistry& registry_;
  std::size_t server_count_;
  std::mt19937_64 share_rng_;
};

// One u_stat per eval-set index with the threshold kernel of tau_i and
// the path noise of i; Theta(n|B|) party messages.
std::vector<double> evaluate_curve_pointwise(AggregationBackend& backend,
                                             const EvaluationGrid& grid,
                                             const std::vector<std::size_t>& eval_set,
                                             double epsilon,
                                             TreeNoiseRegistry& registry);

// Backend factory from a config string: "plaintext" | "addshare:m=<k>" |
// "fss:m=2". The grid is needed by the FSS backend for quantization.
std::unique_ptr<AggregationBackend> make_backend(const std::string& config,
                                                 std::vector<Instance> instances,
                                                 const EvaluationGrid& grid,
                                                 TreeNoiseRegistry& registry,
                                                 std::uint64_t seed);

}  // namespace dpecdf

#endif  // DPECDF_AGGREGATION_HPP
