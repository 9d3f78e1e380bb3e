// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/fss.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include <openssl/evp.h>

namespace dpecdf {

namespace {

using Seed = std::array<std::uint8_t, 16>;

// Length-doubling PRG from fixed-key AES-128 in a Matyas-Meyer-Oseas
// mode: block_i = AES_k(seed ^ i) ^ seed. Three blocks per expansion:
// two child seeds and the two 64-bit value words. Control bits are the
// low bits of the child seeds, cleared after extraction.
struct Expansion {
  Seed seed_left, seed_right;
  std::uint64_t value_left, value_right;
  int bit_left, bit_right;
};

EVP_CIPHER_CTX* prg_cipher() {
  thread_local EVP_CIPHER_CTX* ctx = [] {
    static const std::uint8_t kFixedKey[16] = {0x6b, 0x64, 0x63, 0x66, 0x70, 0x72,
                                               0x67, 0x00, 0x13, 0x37, 0xc0, 0xde,
                                               0xca, 0xfe, 0xf0, 0x0d};
    EVP_CIPHER_CTX* c = EVP_CIPHER_CTX_new();
    if (!c || EVP_EncryptInit_ex(c, EVP_aes_128_ecb(), nullptr, kFixedKey,
                                 nullptr) != 1)
      throw std::runtime_error("AES init failed");
    EVP_CIPHER_CTX_set_padding(c, 0);
    return c;
  }();
  return ctx;
}

std::uint64_t load_u64(const std::uint8_t* p) {
  std::uint64_t v;
  std::memcpy(&v, p, 8);
  return v;
}

Expansion prg(const Seed& seed) {
  std::uint8_t in[48], out[48];
  for (int i = 0; i < 3; ++i) {
    std::memcpy(in + 16 * i, seed.data(), 16);
    in[16 * i] ^= static_cast<std::uint8_t>(i);
  }
  int len = 0;
  if (EVP_EncryptUpdate(prg_cipher(), out, &len, in, 48) != 1 || len != 48)
    throw std::runtime_error("AES encrypt failed");
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 16; ++b) out[16 * i + b] ^= seed[b];

  Expansion e;
  std::memcpy(e.seed_left.data(), out, 16);
  std::memcpy(e.seed_right.data(), out + 16, 16);
  e.bit_left = e.seed_left[0] & 1;
  e.bit_right = e.seed_right[0] & 1;
  e.seed_left[0] &= 0xFE;
  e.seed_right[0] &= 0xFE;
  e.value_left = load_u64(out + 32);
  e.value_right = load_u64(out + 40);
  return e;
}

Seed xor_seeds(const Seed& a, const Seed& b) {
  Seed r;
  for (int i = 0; i < 16; ++i) r[i] = a[i] ^ b[i];
  return r;
}

std::uint64_t convert_seed(const Seed& s) { return load_u64(s.data()); }

Seed random_seed(std::mt19937_64& rng) {
  Seed s;
  std::uint64_t a = rng(), b = rng();
  std::memcpy(s.data(), &a, 8);
  std::memcpy(s.data() + 8, &b, 8);
  return s;
}

constexpr std::uint8_t kKeyMagic[4] = {'D', 'C', 'F', '1'};
constexpr std::uint8_t kKeyVersion = 1;

}  // namespace

std::size_t DcfKey::serialized_size(int domain_depth) {
  // header(8) + root(16) + (L+1)*record(25) + final(8)
  return 8 + 16 + 25 * static_cast<std::size_t>(domain_depth + 1) + 8;
}

std::vector<std::uint8_t> DcfKey::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(serialized_size(domain_depth));
  out.insert(out.end(), kKeyMagic, kKeyMagic + 4);
  out.push_back(kKeyVersion);
  out.push_back(static_cast<std::uint8_t>(kDcfLambdaBits / 8));
  out.push_back(domain_depth);
  out.push_back(party_bit);
  out.insert(out.end(), root_seed.begin(), root_seed.end());
  auto put_u64 = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  for (const CorrectionWord& cw : levels) {
    out.insert(out.end(), cw.seed.begin(), cw.seed.end());
    out.push_back(static_cast<std::uint8_t>(cw.control_left | (cw.control_right << 1)));
    put_u64(cw.value);
  }
  put_u64(final_correction);
  return out;
}

DcfKey DcfKey::deserialize(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kKeyMagic, 4) != 0 ||
      bytes[4] != kKeyVersion || bytes[5] != kDcfLambdaBits / 8)
    throw std::invalid_argument("malformed DCF key header");
  DcfKey k;
  k.domain_depth = bytes[6];
  k.party_bit = bytes[7];
  if (bytes.size() != serialized_size(k.domain_depth))
    throw std::invalid_argument("DCF key length mismatch");
  std::size_t pos = 8;
  std::copy_n(bytes.begin() + pos, 16, k.root_seed.begin());
  pos += 16;
  auto get_u64 = [&](std::size_t at) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{bytes[at + i]} << (8 * i);
    return v;
  };
  for (int l = 0; l <= k.domain_depth; ++l) {
    CorrectionWord cw;
    std::copy_n(bytes.begin() + pos, 16, cw.seed.begin());
    cw.control_left = bytes[pos + 16] & 1;
    cw.control_right = (bytes[pos + 16] >> 1) & 1;
    cw.value = get_u64(pos + 17);
    pos += 25;
    k.levels.push_back(cw);
  }
  k.final_correction = get_u64(pos);
  return k;
}

std::pair<DcfKey, DcfKey> dcf_gen(int domain_depth, std::uint64_t threshold,
                                  std::uint64_t payload, std::mt19937_64& rng) {
  if (domain_depth < 1 || domain_depth > 62)
    throw InvalidParameterError("domain depth must be in [1, 62]");
  if (threshold >> domain_depth)
    throw InvalidParameterError("threshold outside [0, 2^L)");
  const int n = domain_depth + 1;
  const std::uint64_t alpha = threshold + 1;  // f(x) = beta * 1[x < alpha]

  Seed s[2] = {random_seed(rng), random_seed(rng)};
  int t[2] = {0, 1};
  std::uint64_t v_alpha = 0;

  DcfKey keys[2];
  for (int b = 0; b < 2; ++b) {
    keys[b].party_bit = static_cast<std::uint8_t>(b);
    keys[b].domain_depth = static_cast<std::uint8_t>(domain_depth);
    keys[b].root_seed = s[b];
    keys[b].levels.reserve(n);
  }

  for (int i = 1; i <= n; ++i) {
    const int bit = static_cast<int>((alpha >> (n - i)) & 1);
    Expansion e[2] = {prg(s[0]), prg(s[1])};

    auto lose_seed = [&](int b) { return bit ? e[b].seed_left : e[b].seed_right; };
    auto keep_seed = [&](int b) { return bit ? e[b].seed_right : e[b].seed_left; };
    auto lose_value = [&](int b) { return bit ? e[b].value_left : e[b].value_right; };
    auto keep_value = [&](int b) { return bit ? e[b].value_right : e[b].value_left; };
    auto keep_bit = [&](int b) { return bit ? e[b].bit_right : e[b].bit_left; };

    const Seed seed_cw = xor_seeds(lose_seed(0), lose_seed(1));
    std::uint64_t value_cw = lose_value(1) - lose_value(0) - v_alpha;
    if (bit) value_cw += payload;  // lose side is left: beta joins the correction
    v_alpha += keep_value(0) - keep_value(1) + value_cw;
    if (t[1]) value_cw = 0 - value_cw;

    const int tcw_left = e[0].bit_left ^ e[1].bit_left ^ bit ^ 1;
    const int tcw_right = e[0].bit_right ^ e[1].bit_right ^ bit;

    DcfKey::CorrectionWord cw;
    cw.seed = seed_cw;
    cw.control_left = static_cast<std::uint8_t>(tcw_left);
    cw.control_right = static_cast<std::uint8_t>(tcw_right);
    cw.value = value_cw;
    keys[0].levels.push_back(cw);
    keys[1].levels.push_back(cw);

    const int tcw_keep = bit ? tcw_right : tcw_left;
    for (int b = 0; b < 2; ++b) {
      Seed next = keep_seed(b);
      if (t[b]) next = xor_seeds(next, seed_cw);
      const int next_t = keep_bit(b) ^ (t[b] & tcw_keep);
      s[b] = next;
      t[b] = next_t;
    }
  }

  std::uint64_t final_cw = convert_seed(s[1]) - convert_seed(s[0]) - v_alpha;
  if (t[1]) final_cw = 0 - final_cw;
  keys[0].final_correction = final_cw;
  keys[1].final_correction = final_cw;
  return {keys[0], keys[1]};
}

std::uint64_t dcf_eval(int party_bit, const DcfKey& key, std::uint64_t x) {
  const int n = key.domain_depth + 1;
  if (static_cast<std::size_t>(key.levels.size()) != static_cast<std::size_t>(n))
    throw std::invalid_argument("malformed DCF key");
  if (x >> key.domain_depth)
    throw InvalidParameterError("input outside [0, 2^L)");

  Seed s = key.root_seed;
  int t = party_bit & 1;
  std::uint64_t v = 0;
  auto accumulate = [&](std::uint64_t term) {
    v += (party_bit & 1) ? (0 - term) : term;
  };

  for (int i = 1; i <= n; ++i) {
    const DcfKey::CorrectionWord& cw = key.levels[i - 1];
    Expansion e = prg(s);
    const int xbit = static_cast<int>((x >> (n - i)) & 1);
    if (xbit == 0) {
      accumulate(e.value_left + (t ? cw.value : 0));
      s = t ? xor_seeds(e.seed_left, cw.seed) : e.seed_left;
      t = e.bit_left ^ (t & cw.control_left);
    } else {
      accumulate(e.value_right + (t ? cw.value : 0));
      s = t ? xor_seeds(e.seed_right, cw.seed) : e.seed_right;
      t = e.bit_right ^ (t & cw.control_right);
    }
  }
  accumulate(convert_seed(s) + (t ? key.final_correction : 0));
  return v;
}

std::size_t quantize_to_grid(const EvaluationGrid& grid, double score,
                             bool strict_bounds) {
  if (strict_bounds && (score < grid.lo() || score > grid.hi()))
    throw InvalidDomainError("score outside grid bounds in strict mode");
  const auto& pts = grid.points();
  auto it = std::lower_bound(pts.begin(), pts.end(), score);
  if (it == pts.end()) return grid.n_points();
  return static_cast<std::size_t>(it - pts.begin()) + 1;
}

namespace {

// The DCF primitive compares x <= t; the per-party function compares
// value <= query. Flipping both through 2^L - 1 maps one onto the other.
std::uint64_t flip(const EvaluationGrid& grid, std::size_t index) {
  const std::uint64_t top = (std::uint64_t{1} << grid.tree_depth()) - 1;
  return top - static_cast<std::uint64_t>(index - 1);
}

}  // namespace

std::pair<FssServerState, FssServerState> fss_ecdf_backend_setup(
    const std::vector<Instance>& instances, const EvaluationGrid& grid,
    std::mt19937_64& rng, CostMeter& meter, bool strict_bounds) {
  const int depth = std::max(grid.tree_depth(), 1);
  FssServerState s1{1, {}}, s2{2, {}};
  s1.keys.reserve(instances.size());
  s2.keys.reserve(instances.size());
  meter.bump_round();
  for (const Instance& x : instances) {
    const std::size_t idx = quantize_to_grid(grid, x.score, strict_bounds);
    auto [k1, k2] = dcf_gen(depth, flip(grid, idx), 1, rng);
    const std::uint64_t key_bytes = DcfKey::serialized_size(depth);
    meter.record(Role::Party, key_bytes);  // party -> server 1
    meter.record(Role::Party, key_bytes);  // party -> server 2
    s1.keys.push_back(std::move(k1));
    s2.keys.push_back(std::move(k2));
  }
  return {std::move(s1), std::move(s2)};
}

double fss_ecdf_query(FssServerState& server1, FssServerState& server2,
                      const EvaluationGrid& grid, std::size_t grid_index,
                      const std::vector<NodeIndex>& noise_indices,
                      TreeNoiseRegistry& registry, CostMeter& meter) {
  if (server1.keys.size() != server2.keys.size())
    throw std::logic_error("servers hold differing key counts");
  if (grid_index < 1 || grid_index > grid.n_points())
    throw InvalidParameterError("grid index out of range");

  meter.bump_round();
  const std::uint64_t x = flip(grid, grid_index);
  meter.record(Role::Aggregator, sizeof(std::uint64_t));  // query -> server 1
  meter.record(Role::Aggregator, sizeof(std::uint64_t));  // query -> server 2
  std::uint64_t y1 = 0, y2 = 0;
  for (std::size_t i = 0; i < server1.keys.size(); ++i) {
    y1 += dcf_eval(0, server1.keys[i], x);
    y2 += dcf_eval(1, server2.keys[i], x);
  }
  meter.record(Role::Server, sizeof(std::uint64_t));  // server 2 -> publisher

  const std::uint64_t count = y1 + y2;
  double noise = 0;
  for (const NodeIndex& idx : noise_indices) noise += registry.value(idx);
  const double n = static_cast<double>(std::max<std::size_t>(server1.keys.size(), 1));
  const double published = (static_cast<double>(count) + noise) / n;
  meter.record(Role::Server, sizeof(double));  // publication
  return published;
}

FssBackend::FssBackend(std::vector<Instance> instances, const EvaluationGrid& grid,
                       TreeNoiseRegistry& registry, std::uint64_t seed,
                       bool strict_bounds)
    : grid_(grid), registry_(registry), n_(instances.size()) {
  if (instances.empty()) throw InvalidParameterError("no parties");
  std::mt19937_64 rng(seed);
  auto pair = fss_ecdf_backend_setup(instances, grid_, rng, meter_, strict_bounds);
  server1_ = std::move(pair.first);
  server2_ = std::move(pair.second);
}

double FssBackend::u_stat(const Kernel& kernel,
                          const std::vector<NodeIndex>& noise_indices) {
  if (kernel.kind() != Kernel::Kind::ThresholdLE)
    throw InvalidParameterError("FSS backend supports threshold kernels only");
  const auto& pts = grid_.points();
  auto it = std::upper_bound(pts.begin(), pts.end(), kernel.tau());
  if (it == pts.begin())
    throw InvalidParameterError("threshold below the grid domain");
  const std::size_t q = static_cast<std::size_t>(it - pts.begin());
  return fss_ecdf_query(server1_, server2_, grid_, q, noise_indices, registry_,
                        meter_);
}

}  // namespace dpecdf
