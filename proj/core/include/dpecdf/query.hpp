// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_QUERY_HPP
#define DPECDF_QUERY_HPP

#include "dpecdf/noise.hpp"
#include "dpecdf/smoothing.hpp"

namespace dpecdf {

// Left-snap evaluation: value at the largest grid point tau_i <= t,
// clamped to the grid's endpoints.
double eval_at(const PrivateEcdf& curve, double t);
double eval_at(const SmoothedEcdf& curve, double t);  // snaps within B

struct InverseResult {
  double value = 0;
  int iterations = 0;
};

// Binary search for inf{t : F(t) >= p} over [lo, hi] down to interval
// width psi; returns the midpoint of the final interval. Runs
// ceil(log2((hi-lo)/psi)) iterations. Non-monotone curves are accepted;
// the proximity guarantee then no longer applies.
template <class Curve>
InverseResult inverse_ecdf(const Curve& curve, double p, double psi, double lo,
                           double hi);

}  // namespace dpecdf

#endif  // DPECDF_QUERY_HPP
