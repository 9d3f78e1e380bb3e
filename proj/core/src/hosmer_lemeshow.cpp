// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/hosmer_lemeshow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <json.hpp>

#include "dpecdf/stats.hpp"

namespace dpecdf {

HlResult hl_statistic_dp(const ScoredDataset& data, int Q, double epsilon, int L,
                         AggregationBackend& backend, TreeNoiseRegistry& registry,
                         double floor_delta) {
  if (Q < 2) throw InvalidParameterError("Q must be at least 2");
  if (!(epsilon > 0)) throw InvalidParameterError("epsilon must be positive");
  if (L < 1 || L > 30) throw InvalidParameterError("L must lie in [1, 30]");
  if (!(floor_delta > 0)) throw InvalidParameterError("floor must be positive");
  for (const Instance& r : data.records)
    if (!(r.score >= 0.0 && r.score <= 1.0))
      throw InvalidParameterError("scores must be predicted probabilities in [0,1]");
  if (backend.party_count() != data.n())
    throw InvalidParameterError("backend party count does not match dataset");

  const bool noiseless = std::isinf(epsilon);
  const double eps_prime = epsilon / (L + 9);
  const std::size_t N = std::size_t{1} << L;
  const NoiseSpec stat_spec =
      noiseless ? NoiseSpec::none() : NoiseSpec::laplace(1.0 / eps_prime);

  // Cut points: binary search over the (L+1)eps'-DP tree ECDF on a
  // uniform 2^L-point grid; per-node scale (L+1)/((L+1)eps') = 1/eps'.
  EvaluationGrid grid =
      make_uniform_grid(0.0, 1.0, 1.0 / static_cast<double>(N - 1));
  registry.set_tree_spec(stat_spec);

  std::unordered_map<std::size_t, double> cache;
  auto curve_value = [&](double m) {
    const auto& pts = grid.points();
    auto it = std::upper_bound(pts.begin(), pts.end(), m);
    const std::size_t i =
        it == pts.begin() ? 1 : static_cast<std::size_t>(it - pts.begin());
    auto hit = cache.find(i);
    if (hit != cache.end()) return hit->second;
    const double v = backend.u_stat(Kernel::threshold_le(grid.point(i)),
                                    grid.path_indices(i));
    cache.emplace(i, v);
    return v;
  };

  const double psi = 1.0 / (4.0 * static_cast<double>(N));
  const int iters = static_cast<int>(std::ceil(std::log2(1.0 / psi)));
  auto invert = [&](double p) {
    double lo = 0.0, hi = 1.0;
    for (int k = 0; k < iters; ++k) {
      const double mid = 0.5 * (lo + hi);
      if (curve_value(mid) >= p) hi = mid;
      else lo = mid;
    }
    return 0.5 * (lo + hi);
  };

  HlResult out;
  out.Q = Q;
  out.L = L;
  out.epsilon = epsilon;
  out.floor_delta = floor_delta;
  out.ledger = BudgetAccount(epsilon);

  out.cuts.resize(Q + 1);
  out.cuts[0] = 0.0;
  out.cuts[Q] = 1.0;
  for (int q = 1; q < Q; ++q) {
    double t = invert(static_cast<double>(q) / Q);
    // Noise can invert the search results; clamp to keep cuts ordered.
    out.cuts[q] = std::clamp(t, out.cuts[q - 1], 1.0);
  }

  const double n = static_cast<double>(data.n());
  out.obs_pos.resize(Q);
  out.exp_pos.resize(Q);
  out.obs_neg.resize(Q);
  out.exp_neg.resize(Q);
  out.H = 0.0;
  for (int q = 1; q <= Q; ++q) {
    const double t_lo = out.cuts[q - 1];
    const double t_hi = out.cuts[q];
    const bool first = q == 1;
    auto in_group = [t_lo, t_hi, first](const Instance& x) {
      return (first ? x.score >= t_lo : x.score > t_lo) && x.score <= t_hi;
    };
    for (int s = 0; s < 4; ++s)
      registry.register_singleton({-q, s}, stat_spec);

    auto stat = [&](std::function<double(const Instance&)> fn, int s) {
      return n * backend.u_stat(Kernel::generic(std::move(fn)),
                                {NodeIndex{-q, s}});
    };
    const double e1 = stat(
        [in_group](const Instance& x) { return in_group(x) ? x.score : 0.0; }, 1);
    const double e0 = stat(
        [in_group](const Instance& x) { return in_group(x) ? 1.0 - x.score : 0.0; },
        0);
    const double o1 = stat(
        [in_group](const Instance& x) {
          return in_group(x) && x.label == 1 ? 1.0 : 0.0;
        },
        3);
    const double o0 = stat(
        [in_group](const Instance& x) {
          return in_group(x) && x.label == 0 ? 1.0 : 0.0;
        },
        2);

    out.exp_pos[q - 1] = e1;
    out.exp_neg[q - 1] = e0;
    out.obs_pos[q - 1] = o1;
    out.obs_neg[q - 1] = o0;
    if (e1 < floor_delta || e0 < floor_delta) out.floor_applied = true;
    const double d1 = o1 - e1;
    const double d0 = o0 - e0;
    out.H += d1 * d1 / std::max(e1, floor_delta) +
             d0 * d0 / std::max(e0, floor_delta);
  }

  if (!noiseless) {
    out.ledger.charge("hl.cuts", (L + 1) * eps_prime, Rational(L + 1, L + 9));
    out.ledger.charge("hl.stats", 8 * eps_prime, Rational(8, L + 9));
  }
  out.p_value = Q >= 3 ? chi2_sf(out.H, Q - 2)
                       : std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::string HlResult::to_json() const {
  nlohmann::json j;
  j["H"] = H;
  j["Q"] = Q;
  j["L"] = L;
  j["df"] = df();
  j["epsilon"] = std::isinf(epsilon) ? nlohmann::json() : nlohmann::json(epsilon);
  j["cuts"] = cuts;
  j["obs_pos"] = obs_pos;
  j["exp_pos"] = exp_pos;
  j["obs_neg"] = obs_neg;
  j["exp_neg"] = exp_neg;
  j["floor_delta"] = floor_delta;
  j["floor_applied"] = floor_applied;
  j["p_value"] = std::isnan(p_value) ? nlohmann::json() : nlohmann::json(p_value);
  j["ledger"] = nlohmann::json::parse(ledger.to_json());
  return j.dump();
}

std::string HlResult::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "group,t_lo,t_hi,obs_pos,exp_pos,obs_neg,exp_neg\n";
  for (int q = 1; q <= Q; ++q)
    os << q << ',' << cuts[q - 1] << ',' << cuts[q] << ',' << obs_pos[q - 1]
       << ',' << exp_pos[q - 1] << ',' << obs_neg[q - 1] << ',' << exp_neg[q - 1]
       << '\n';
  return os.str();
}

}  // namespace dpecdf
