// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_FSS_HPP
#define DPECDF_FSS_HPP

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "dpecdf/aggregation.hpp"
#include "dpecdf/grid.hpp"

namespace dpecdf {

inline constexpr int kDcfLambdaBits = 128;

// One server's share of the comparison function x -> beta * 1[x <= t]
// over the domain [0, 2^L). GGM seed tree with per-level seed/value
// correction words; output group Z_2^64. Internally the tree is one
// level deeper than the domain (L+1 bits) so the inclusive threshold at
// the top of the range needs no special case; the serialized length
// stays affine in L.
struct DcfKey {
  struct CorrectionWord {
    std::array<std::uint8_t, 16> seed;
    std::uint8_t control_left = 0;
    std::uint8_t control_right = 0;
    std::uint64_t value = 0;
  };

  std::uint8_t party_bit = 0;
  std::uint8_t domain_depth = 0;  // L; tree has L+1 levels
  std::array<std::uint8_t, 16> root_seed{};
  std::vector<CorrectionWord> levels;
  std::uint64_t final_correction = 0;

  // Little-endian wire format: header {magic, version, lambda, L}, root
  // seed, L+1 correction records, final correction.
  std::vector<std::uint8_t> serialize() const;
  static DcfKey deserialize(const std::vector<std::uint8_t>& bytes);
  static std::size_t serialized_size(int domain_depth);
};

// Key pair for f(x) = beta * 1[x <= threshold], x in [0, 2^L).
std::pair<DcfKey, DcfKey> dcf_gen(int domain_depth, std::uint64_t threshold,
                                  std::uint64_t payload, std::mt19937_64& rng);

// Additive share of f(x) in Z_2^64; deterministic in (key, x).
std::uint64_t dcf_eval(int party_bit, const DcfKey& key, std::uint64_t x);

// Smallest grid index whose point is >= score, so that score <= tau_q
// iff index <= q. Out-of-range scores clamp to the nearest endpoint
// (strict mode throws instead).
std::size_t quantize_to_grid(const EvaluationGrid& grid, double score,
                             bool strict_bounds);

// One of the two evaluation servers: holds one key per registered party.
struct FssServerState {
  int server_index = 1;  // 1 or 2
  std::vector<DcfKey> keys;
};

// Key generation phase: each party quantizes its score to a grid index
// and shares the comparison function q -> 1[index <= q]. Scores outside
// the grid bounds are clamped (strict mode errors instead). Records 2n
// key messages on the meter.
std::pair<FssServerState, FssServerState> fss_ecdf_backend_setup(
    const std::vector<Instance>& instances, const EvaluationGrid& grid,
    std::mt19937_64& rng, CostMeter& meter, bool strict_bounds = false);

// Query phase: both servers sum their per-party evaluations at grid
// index i; server 1 (the publisher) reconstructs, adds the registry
// noise and publishes. Cost per query: 2 query messages, 1 inter-server
// exchange, 1 publication.
double fss_ecdf_query(FssServerState& server1, FssServerState& server2,
                      const EvaluationGrid& grid, std::size_t grid_index,
                      const std::vector<NodeIndex>& noise_indices,
                      TreeNoiseRegistry& registry, CostMeter& meter);

// AggregationBackend adapter; supports threshold kernels only.
class FssBackend : public AggregationBackend {
 public:
  FssBackend(std::vector<Instance> instances, const EvaluationGrid& grid,
             TreeNoiseRegistry& registry, std::uint64_t seed,
             bool strict_bounds = false);

  double u_stat(const Kernel& kernel,
                const std::vector<NodeIndex>& noise_indices) override;
  std::size_t party_count() const override { return n_; }

 private:
  EvaluationGrid grid_;
  TreeNoiseRegistry& registry_;
  std::size_t n_;
  FssServerState server1_, server2_;
};

}  // namespace dpecdf

#endif  // DPECDF_FSS_HPP
