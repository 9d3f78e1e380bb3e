// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/roc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <json.hpp>

namespace dpecdf {

namespace {

// Count curve of one class at frequency-of-n scale, plus tree noise.
std::vector<double> class_count_curve(const ScoredDataset& data, int want_label,
                                      const EvaluationGrid& grid, double epsilon,
                                      TreeNoiseRegistry& registry) {
  std::vector<double> scores;
  for (const Instance& r : data.records)
    if (r.label == want_label) scores.push_back(r.score);
  std::sort(scores.begin(), scores.end());

  const bool noiseless = std::isinf(epsilon);
  const int L = grid.tree_depth();
  registry.set_tree_spec(noiseless ? NoiseSpec::none()
                                   : NoiseSpec::laplace((L + 1) / epsilon));
  const double n = static_cast<double>(data.n());
  std::vector<double> out(grid.n_points());
  for (std::size_t i = 1; i <= grid.n_points(); ++i) {
    auto it = std::upper_bound(scores.begin(), scores.end(), grid.point(i));
    double v = static_cast<double>(it - scores.begin()) / n;
    if (!noiseless) {
      double noise = 0;
      for (const NodeIndex& idx : grid.path_indices(i)) noise += registry.value(idx);
      v += noise / n;
    }
    out[i - 1] = v;
  }
  return out;
}

std::vector<double> ratio_to_last(const std::vector<double>& counts) {
  const double denom = counts.back();
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) out[i] = counts[i] / denom;
  return out;
}

struct RocPoint {
  double f, t;
};

// Breakpoints padded to span FPR in [0, 1].
std::vector<RocPoint> padded_points(const RocCurve& c) {
  std::vector<RocPoint> pts;
  pts.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < c.fpr.size(); ++i) pts.push_back({c.fpr[i], c.tpr[i]});
  pts.push_back({1.0, 1.0});
  return pts;
}

// Piecewise-linear value at f; at a breakpoint shared by several points
// the side is chosen by hint (the segment containing hint is used).
double pl_eval(const std::vector<RocPoint>& pts, double f, double hint) {
  std::size_t k = 0;
  while (k + 2 < pts.size() && pts[k + 1].f <= hint) ++k;
  // Segment [k, k+1]; vertical segments only occur at exact breakpoints.
  const double df = pts[k + 1].f - pts[k].f;
  if (df <= 0) return pts[k + 1].t;
  const double w = (f - pts[k].f) / df;
  return pts[k].t + w * (pts[k + 1].t - pts[k].t);
}

}  // namespace

bool RocCurve::is_monotone(double tol) const {
  for (std::size_t i = 1; i < tpr.size(); ++i)
    if (tpr[i] < tpr[i - 1] - tol || fpr[i] < fpr[i - 1] - tol) return false;
  return true;
}

std::string RocCurve::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["epsilon"] = std::isinf(epsilon) ? nlohmann::json() : nlohmann::json(epsilon);
  j["grid"] = nlohmann::json::parse(grid.to_json());
  auto pts = nlohmann::json::array();
  for (std::size_t i = 0; i < tpr.size(); ++i)
    pts.push_back({{"tau", grid.point(i + 1)},
                   {"fpr", fpr[i]},
                   {"tpr", tpr[i]},
                   {"tp_count", tp_counts[i]},
                   {"fp_count", fp_counts[i]}});
  j["points"] = pts;
  return j.dump();
}

std::string RocCurve::to_csv() const {
  std::ostringstream os;
  os << "tau,fpr,tpr,tp_count,fp_count\n";
  os.precision(17);
  for (std::size_t i = 0; i < tpr.size(); ++i)
    os << grid.point(i + 1) << ',' << fpr[i] << ',' << tpr[i] << ','
       << tp_counts[i] << ',' << fp_counts[i] << '\n';
  return os.str();
}

RocCurve dp_roc(const ScoredDataset& data, const EvaluationGrid& grid,
                double epsilon_total, TreeNoiseRegistry& tp_registry,
                TreeNoiseRegistry& fp_registry, BudgetAccount* account) {
  if (data.records.empty()) throw InvalidParameterError("empty dataset");
  if (!(epsilon_total > 0)) throw InvalidParameterError("epsilon must be positive");
  const std::size_t pos = data.positives();
  if (pos == 0 || pos == data.n())
    throw DegenerateClassError("ROC needs both classes present");

  const bool noiseless = std::isinf(epsilon_total);
  const double eps_each = noiseless ? kNoiselessEpsilon : epsilon_total / 2;

  RocCurve out{grid, {}, {}, {}, {}, data.n(), epsilon_total};
  out.tp_counts = class_count_curve(data, 1, grid, eps_each, tp_registry);
  out.fp_counts = class_count_curve(data, 0, grid, eps_each, fp_registry);
  out.tpr = ratio_to_last(out.tp_counts);
  out.fpr = ratio_to_last(out.fp_counts);

  if (!noiseless && account) {
    account->charge("roc.tp", eps_each, Rational(1, 2));
    account->charge("roc.fp", eps_each, Rational(1, 2));
  }
  return out;
}

RocCurve smooth_roc(const RocCurve& curve, int p, const SolverConfig& cfg) {
  std::vector<std::size_t> eval_set(curve.grid.n_points());
  for (std::size_t i = 0; i < eval_set.size(); ++i) eval_set[i] = i + 1;

  RocCurve out = curve;
  for (auto* counts : {&out.tp_counts, &out.fp_counts}) {
    PrivateEcdf base{curve.grid, *counts, curve.n, curve.epsilon};
    SmoothedEcdf sm = smooth(base, eval_set, p, cfg);
    *counts = sm.values;
  }
  out.tpr = ratio_to_last(out.tp_counts);
  out.fpr = ratio_to_last(out.fp_counts);
  return out;
}

double roc_symmetric_difference(const RocCurve& a, const RocCurve& b) {
  constexpr double kTol = 1e-12;
  if (!a.is_monotone(kTol) || !b.is_monotone(kTol))
    throw NonMonotoneRocError("symmetric difference needs monotone curves; smooth first");

  const auto pa = padded_points(a);
  const auto pb = padded_points(b);
  std::vector<double> breaks;
  for (const auto& p : pa) breaks.push_back(p.f);
  for (const auto& p : pb) breaks.push_back(p.f);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double area = 0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double f0 = breaks[k], f1 = breaks[k + 1];
    const double mid = 0.5 * (f0 + f1);
    const double d0 = pl_eval(pa, f0, mid) - pl_eval(pb, f0, mid);
    const double d1 = pl_eval(pa, f1, mid) - pl_eval(pb, f1, mid);
    const double w = f1 - f0;
    if (d0 * d1 >= 0) {
      area += 0.5 * w * (std::abs(d0) + std::abs(d1));
    } else {
      // Sign change: split at the root of the linear difference.
      const double r = d0 / (d0 - d1);
      area += 0.5 * w * (r * std::abs(d0) + (1 - r) * std::abs(d1));
    }
  }
  return area;
}

}  // namespace dpecdf
