// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dpecdf/aggregation.hpp"
#include "dpecdf/fss.hpp"

using namespace dpecdf;

namespace {

std::vector<Instance> grid_instances(const EvaluationGrid& grid, std::size_t n,
                                     std::mt19937_64& rng) {
  std::vector<Instance> out(n);
  for (auto& x : out) {
    x.score = grid.point(1 + rng() % grid.n_points());
    x.label = static_cast<int>(rng() % 2);
  }
  return out;
}

}  // namespace

TEST_CASE("fixed point round trip") {
  for (double v : {0.0, 1.0, -1.0, 0.3333333, 12.75, -7.125}) {
    CHECK(fixed_point_decode(fixed_point_encode(v)) ==
          doctest::Approx(v).epsilon(1e-6));
  }
}

TEST_CASE("additive shares sum to the value") {
  std::mt19937_64 rng(5);
  for (std::size_t m : {2, 3, 5}) {
    const std::uint64_t v = rng();
    auto shares = additive_share(v, m, rng);
    std::uint64_t sum = 0;
    for (auto s : shares) sum += s;
    CHECK(sum == v);
  }
  CHECK_THROWS_AS(additive_share(1, 1, rng), InvalidParameterError);
}

TEST_CASE("all backends publish the same value under a shared registry") {
  std::mt19937_64 rng(31);
  auto grid = make_uniform_grid(0.0, 1.0, 1.0 / 7.0);
  const auto instances = grid_instances(grid, 12, rng);

  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t seed = rng();
    const std::size_t i = 1 + rng() % grid.n_points();
    const auto kernel = Kernel::threshold_le(grid.point(i));
    const auto indices = grid.path_indices(i);

    TreeNoiseRegistry r_plain(seed), r_add2(seed), r_add3(seed), r_fss(seed);
    for (auto* r : {&r_plain, &r_add2, &r_add3, &r_fss})
      r->set_tree_spec(NoiseSpec::laplace(3.0));

    PlaintextBackend plain(instances, r_plain);
    AddShareBackend add2(instances, r_add2, 2, 99);
    AddShareBackend add3(instances, r_add3, 3, 99);
    FssBackend fss(instances, grid, r_fss, 99);

    const double want = plain.u_stat(kernel, indices);
    CHECK(std::abs(add2.u_stat(kernel, indices) - want) <= std::ldexp(1.0, -20));
    CHECK(std::abs(add3.u_stat(kernel, indices) - want) <= std::ldexp(1.0, -20));
    CHECK(fss.u_stat(kernel, indices) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("generic kernels run on plaintext and sharing backends") {
  std::mt19937_64 rng(8);
  auto grid = make_uniform_grid(0.0, 1.0, 0.25);
  const auto instances = grid_instances(grid, 9, rng);
  TreeNoiseRegistry r1(4), r2(4);
  r1.register_singleton({-1, 0}, NoiseSpec::laplace(2.0));
  r2.register_singleton({-1, 0}, NoiseSpec::laplace(2.0));
  auto kernel = Kernel::generic([](const Instance& x) {
    return x.label == 1 ? x.score : 0.0;
  });
  PlaintextBackend plain(instances, r1);
  AddShareBackend add(instances, r2, 2, 3);
  const double a = plain.u_stat(kernel, {{-1, 0}});
  const double b = add.u_stat(kernel, {{-1, 0}});
  CHECK(std::abs(a - b) <= std::ldexp(1.0, -18));
}

TEST_CASE("fss backend rejects generic kernels") {
  std::mt19937_64 rng(8);
  auto grid = make_uniform_grid(0.0, 1.0, 0.25);
  TreeNoiseRegistry reg(4);
  FssBackend fss(grid_instances(grid, 4, rng), grid, reg, 7);
  CHECK_THROWS(fss.u_stat(Kernel::generic([](const Instance&) { return 1.0; }),
                          {}));
}

TEST_CASE("pointwise curve costs n messages per evaluated point") {
  std::mt19937_64 rng(21);
  auto grid = make_uniform_grid(0.0, 1.0, 1.0 / 7.0);  // 8 points
  REQUIRE(grid.n_points() == 8);
  const auto instances = grid_instances(grid, 16, rng);
  std::vector<std::size_t> eval_set{1, 2, 3, 4, 5, 6, 7, 8};

  TreeNoiseRegistry reg(1);
  PlaintextBackend plain(instances, reg);
  evaluate_curve_pointwise(plain, grid, eval_set, 1.0, reg);
  CHECK(plain.cost_report().party_messages == 128);  // n * |B|
  CHECK(plain.cost_report().aggregator_messages == 8);

  TreeNoiseRegistry reg2(1);
  FssBackend fss(instances, grid, reg2, 5);
  const auto setup_messages = fss.cost_report().messages_sent();
  CHECK(setup_messages == 32);  // 2n key messages
  evaluate_curve_pointwise(fss, grid, eval_set, 1.0, reg2);
  CHECK(fss.cost_report().messages_sent() - setup_messages == 32);  // 4 per query
  CHECK(fss.cost_report().messages_sent() == 64);
}

TEST_CASE("addshare message accounting") {
  std::mt19937_64 rng(2);
  auto grid = make_uniform_grid(0.0, 1.0, 0.5);
  const auto instances = grid_instances(grid, 6, rng);
  TreeNoiseRegistry reg(9);
  AddShareBackend add(instances, reg, 3, 1);
  add.u_stat(Kernel::threshold_le(0.5), {});
  // n*m party shares, m-1 server aggregates, one publication.
  CHECK(add.cost_report().party_messages == 18);
  CHECK(add.cost_report().server_messages == 2);
  CHECK(add.cost_report().aggregator_messages == 1);
}

TEST_CASE("backend factory parses config strings") {
  std::mt19937_64 rng(3);
  auto grid = make_uniform_grid(0.0, 1.0, 0.5);
  auto instances = grid_instances(grid, 4, rng);
  TreeNoiseRegistry reg(2);
  CHECK(make_backend("plaintext", instances, grid, reg, 1)->party_count() == 4);
  CHECK(make_backend("addshare:m=3", instances, grid, reg, 1)->party_count() == 4);
  CHECK(make_backend("fss:m=2", instances, grid, reg, 1)->party_count() == 4);
  CHECK_THROWS_AS(make_backend("bogus", instances, grid, reg, 1),
                  InvalidParameterError);
}
