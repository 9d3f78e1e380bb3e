// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/query.hpp"

#include <algorithm>

namespace dpecdf {

namespace {

// Index of the last value whose threshold is <= t; 0 if t precedes all.
template <class Thresholds>
std::size_t left_snap(const Thresholds& taus, double t) {
  auto it = std::upper_bound(taus.begin(), taus.end(), t);
  if (it == taus.begin()) return 0;
  return static_cast<std::size_t>(it - taus.begin()) - 1;
}

}  // namespace

double eval_at(const PrivateEcdf& curve, double t) {
  return curve.values[left_snap(curve.grid.points(), t)];
}

double eval_at(const SmoothedEcdf& curve, double t) {
  std::vector<double> taus;
  taus.reserve(curve.eval_set.size());
  for (std::size_t i : curve.eval_set) taus.push_back(curve.grid.point(i));
  return curve.values[left_snap(taus, t)];
}

template <class Curve>
InverseResult inverse_ecdf(const Curve& curve, double p, double psi, double lo,
                           double hi) {
  if (!(psi > 0)) throw InvalidParameterError("psi must be positive");
  if (!(lo < hi)) throw InvalidDomainError("require lo < hi");
  double a = lo, b = hi;
  int iterations = 0;
  while (b - a > psi) {
    const double m = (a + b) / 2;
    if (eval_at(curve, m) < p) a = m;
    else b = m;
    ++iterations;
  }
  return {(a + b) / 2, iterations};
}

template InverseResult inverse_ecdf<PrivateEcdf>(const PrivateEcdf&, double,
                                                 double, double, double);
template InverseResult inverse_ecdf<SmoothedEcdf>(const SmoothedEcdf&, double,
                                                  double, double, double);

}  // namespace dpecdf
