// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <json.hpp>

namespace dpecdf {

TreeIndexMap::TreeIndexMap(int tree_depth) : tree_depth_(tree_depth) {
  level_offset_.resize(tree_depth + 2);
  level_offset_[0] = 0;
  for (int l = 0; l <= tree_depth; ++l)
    level_offset_[l + 1] =
        level_offset_[l] + (std::size_t{1} << (tree_depth - l));
  size_ = level_offset_[tree_depth + 1];
}

std::size_t TreeIndexMap::column(const NodeIndex& idx) const {
  if (idx.l < 0 || idx.l > tree_depth_ || idx.j < 1 ||
      idx.j > static_cast<std::int64_t>(std::size_t{1} << (tree_depth_ - idx.l)))
    throw InvalidParameterError("node index outside I[L]");
  return level_offset_[idx.l] + static_cast<std::size_t>(idx.j - 1);
}

NodeIndex TreeIndexMap::index_at(std::size_t column) const {
  for (int l = 0; l <= tree_depth_; ++l) {
    if (column < level_offset_[l + 1])
      return {static_cast<std::int64_t>(column - level_offset_[l] + 1), l};
  }
  throw InvalidParameterError("column outside I[L]");
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Row coefficients of the path-sum map for one eval-set constraint.
void add_path(Triplets& trip, int row, const TreeIndexMap& map, int tree_depth,
              std::size_t grid_index, double coeff, std::size_t col_shift) {
  for (const NodeIndex& idx : path_indices(tree_depth, grid_index))
    trip.emplace_back(row, static_cast<int>(map.column(idx) + col_shift), coeff);
}

}  // namespace

SmoothedEcdf smooth(const PrivateEcdf& base, std::vector<std::size_t> eval_set,
                    int p, const SolverConfig& cfg) {
  if (p != 1 && p != 2) throw InvalidParameterError("p must be 1 or 2");
  if (eval_set.empty()) throw InvalidParameterError("eval set must be nonempty");
  std::sort(eval_set.begin(), eval_set.end());
  eval_set.erase(std::unique(eval_set.begin(), eval_set.end()), eval_set.end());
  if (eval_set.front() < 1 || eval_set.back() > base.grid.n_points())
    throw InvalidParameterError("eval set outside grid");

  const int L = base.grid.tree_depth();
  const TreeIndexMap map(L);
  const std::size_t nvar_nu = map.size();
  const std::size_t k = eval_set.size();
  const auto fhat = [&](std::size_t pos) { return base.values[eval_set[pos] - 1]; };

  // Inequalities over nu: -path(first) <= fhat(first); path(last) <= 1 -
  // fhat(last); (path(i) - path(i+1)) <= fhat(i+1) - fhat(i).
  const int n_rows = static_cast<int>(k + 1);
  Triplets trip;
  Eigen::VectorXd h(p == 1 ? n_rows + 2 * nvar_nu : n_rows);
  auto add_row_pair = [&](int row, std::size_t grid_index, double coeff) {
    add_path(trip, row, map, L, grid_index, coeff, 0);
    if (p == 1) add_path(trip, row, map, L, grid_index, -coeff, nvar_nu);
  };
  add_row_pair(0, eval_set.front(), -1.0);
  h[0] = fhat(0);
  add_row_pair(1, eval_set.back(), 1.0);
  h[1] = 1.0 - fhat(k - 1);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const int row = static_cast<int>(i + 2);
    add_row_pair(row, eval_set[i], 1.0);
    add_row_pair(row, eval_set[i + 1], -1.0);
    h[row] = fhat(i + 1) - fhat(i);
  }

  const std::size_t nvar = p == 1 ? 2 * nvar_nu : nvar_nu;
  Eigen::SparseMatrix<double> P(nvar, nvar);
  Eigen::VectorXd c(nvar);
  if (p == 2) {
    P.setIdentity();
    P *= 2.0;
    c.setZero();
  } else {
    c.setOnes();
    for (std::size_t v = 0; v < nvar; ++v) {
      trip.emplace_back(n_rows + static_cast<int>(v), static_cast<int>(v), -1.0);
      h[n_rows + v] = 0.0;
    }
  }
  Eigen::SparseMatrix<double> G(h.size(), nvar);
  G.setFromTriplets(trip.begin(), trip.end());

  SolverResult res = solve_qp(P, c, G, h, cfg);

  std::vector<double> nu(nvar_nu);
  for (std::size_t v = 0; v < nvar_nu; ++v)
    nu[v] = p == 1 ? res.x[v] - res.x[nvar_nu + v] : res.x[v];

  // The interior-point solution satisfies the constraints to tolerance
  // only; fold the residual into the leaf corrections so the published
  // values are exactly monotone and inside [0,1].
  std::vector<double> raw(k);
  for (std::size_t i = 0; i < k; ++i) {
    double path_sum = 0;
    for (const NodeIndex& idx : path_indices(L, eval_set[i]))
      path_sum += nu[map.column(idx)];
    raw[i] = fhat(i) + path_sum;
  }
  std::vector<double> fixed(k);
  double running = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    running = i == 0 ? raw[i] : std::max(running, raw[i]);
    fixed[i] = std::min(std::max(running, 0.0), 1.0);
    nu[map.column({static_cast<std::int64_t>(eval_set[i]), 0})] += fixed[i] - raw[i];
  }

  double objective = 0;
  for (double v : nu) objective += p == 1 ? std::abs(v) : v * v;

  return SmoothedEcdf{base.grid, std::move(eval_set), std::move(fixed),
                      std::move(nu), objective, p};
}

double mse_ratio(const PrivateEcdf& truth, const PrivateEcdf& dp,
                 const SmoothedEcdf& smoothed) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < smoothed.eval_set.size(); ++i) {
    const std::size_t gi = smoothed.eval_set[i] - 1;
    const double t = truth.values.at(gi);
    num += (t - smoothed.values[i]) * (t - smoothed.values[i]);
    den += (t - dp.values.at(gi)) * (t - dp.values.at(gi));
  }
  if (den == 0) throw UndefinedRatioError("dp curve equals the reference curve");
  return num / den;
}

std::string SmoothedEcdf::to_json() const {
  nlohmann::json j;
  j["B"] = eval_set;
  j["values"] = values;
  j["objective"] = objective;
  j["p"] = p;
  return j.dump();
}

std::string SmoothedEcdf::to_csv() const {
  std::ostringstream out;
  out << "tau,value\n";
  out.precision(17);
  for (std::size_t i = 0; i < eval_set.size(); ++i)
    out << grid.point(eval_set[i]) << "," << values[i] << "\n";
  return out.str();
}

}  // namespace dpecdf
