// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_STATS_HPP
#define DPECDF_STATS_HPP

namespace dpecdf {

// Regularized lower incomplete gamma P(a, x), absolute error <= 1e-12.
double regularized_gamma_p(double a, double x);

// Upper-tail probability of the chi-square distribution with df degrees
// of freedom: Q(df/2, h/2). Negative h (possible after DP noise) is
// clamped to 0.
double chi2_sf(double h, int df);

}  // namespace dpecdf

#endif  // DPECDF_STATS_HPP
