// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0
//
// Solve-time benchmarks for the monotone smoothing LP (p=1) and QP (p=2)
// across curve sizes, plus the DP curve release itself for context.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "dpecdf/data.hpp"
#include "dpecdf/noise.hpp"
#include "dpecdf/smoothing.hpp"

namespace {

using namespace dpecdf;

struct Fixture {
  PrivateEcdf curve;
  std::vector<std::size_t> eval_set;
};

Fixture make_fixture(std::size_t domain, std::uint64_t seed) {
  auto values = gen_poisson_dataset(3.0, domain, seed);
  const double d = static_cast<double>(domain);
  for (auto& v : values) v /= d;
  auto grid = make_uniform_grid(1.0 / d, 1.0, 1.0 / d);
  TreeNoiseRegistry registry(seed);
  Fixture f{dp_ecdf(values, grid, 1.0, registry), {}};
  f.eval_set.resize(grid.n_points());
  for (std::size_t i = 0; i < f.eval_set.size(); ++i) f.eval_set[i] = i + 1;
  return f;
}

void BM_SmoothSolve(benchmark::State& state) {
  const auto domain = static_cast<std::size_t>(state.range(0));
  const int p = static_cast<int>(state.range(1));
  auto f = make_fixture(domain, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smooth(f.curve, f.eval_set, p));
  }
  state.SetComplexityN(state.range(0));
}

void BM_DpEcdfRelease(benchmark::State& state) {
  const auto domain = static_cast<std::size_t>(state.range(0));
  auto values = gen_poisson_dataset(3.0, domain, 7);
  const double d = static_cast<double>(domain);
  for (auto& v : values) v /= d;
  auto grid = make_uniform_grid(1.0 / d, 1.0, 1.0 / d);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    TreeNoiseRegistry registry(++seed);
    benchmark::DoNotOptimize(dp_ecdf(values, grid, 1.0, registry));
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_SmoothSolve)
    ->ArgsProduct({{64, 128, 256, 512, 1024, 2048}, {1, 2}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DpEcdfRelease)
    ->RangeMultiplier(4)
    ->Range(64, 4096)
    ->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
