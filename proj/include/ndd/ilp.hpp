// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Best-first branch and bound over the x columns of an LpModel. The y
// columns stay continuous: with integral x each y settles at 0 or 1.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <queue>
#include <vector>

#include "ndd/lp.hpp"

namespace ndd {

struct IlpOptions {
  double time_limit_s = lp::kInf;
  long long max_nodes = -1;  // negative: unlimited
};

struct IlpResult {
  lp::Status status = lp::Status::kOptimal;
  FractionalSolution x;  // integral incumbent over all network variables
  double objective = 0.0;  // incumbent LP objective (outside constant excluded)
  double bound = 0.0;      // best upper bound on the integer optimum
  long long nodes = 0;
};

namespace detail {

struct BbNode {
  double bound;
  int depth;
  long long id;
  std::vector<std::pair<int, std::int8_t>> fixings;  // (x column, 0|1)
  std::shared_ptr<const lp::Basis> basis;

  bool operator<(const BbNode& o) const {
    if (bound != o.bound) return bound < o.bound;
    if (depth != o.depth) return depth < o.depth;
    return id > o.id;
  }
};

// Whether the lower-bound point of the fixed model satisfies every row.
inline bool origin_feasible(const lp::LinearProgram& lp) {
  std::vector<double> act(lp.num_rows(), 0.0);
  for (int c = 0; c < lp.num_cols(); ++c) {
    const double lo = lp.lower(c);
    if (lo == 0.0) continue;
    const auto rows = lp.col_rows(c);
    const auto vals = lp.col_vals(c);
    for (std::size_t k = 0; k < rows.size(); ++k) act[rows[k]] += vals[k] * lo;
  }
  for (int r = 0; r < lp.num_rows(); ++r) {
    if (act[r] > lp.rhs(r) + 1e-9) return false;
  }
  return true;
}

}  // namespace detail

inline IlpResult solve_ilp(const LpModel& model, const IlpOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  IlpResult res;
  res.x = FractionalSolution{std::vector<double>(model.num_network_vars, 0.0)};
  {
    // all-zero x is feasible
    std::vector<double> zero(model.lp.num_cols(), 0.0);
    res.objective = completed_objective(model, zero);
  }
  std::vector<double> best_values;

  LpModel work = model;
  std::priority_queue<detail::BbNode> open;
  long long next_id = 0;
  open.push({lp::kInf, 0, next_id++, {}, nullptr});
  bool stopped = false;

  while (!open.empty()) {
    if (elapsed() > opt.time_limit_s ||
        (opt.max_nodes >= 0 && res.nodes >= opt.max_nodes)) {
      stopped = true;
      break;
    }
    detail::BbNode node = open.top();
    open.pop();
    if (node.bound <= res.objective) continue;
    ++res.nodes;

    for (int c = 0; c < model.num_x(); ++c) work.lp.set_bounds(model.first_x_col + c, 0.0, 1.0);
    for (const auto& [c, v] : node.fixings) {
      work.lp.set_bounds(model.first_x_col + c, v, v);
    }
    if (!detail::origin_feasible(work.lp)) continue;

    LpOptions lo;
    lo.time_limit_s = std::max(0.0, opt.time_limit_s - elapsed());
    lo.warm_start = node.basis.get();
    LpSolution sol = solve_lp(work, lo);
    if (sol.status != lp::Status::kOptimal) {
      open.push(node);  // keep its bound for the report
      stopped = true;
      break;
    }
    const double bound = std::min(node.bound, sol.objective);
    if (bound <= res.objective) continue;

    // Most fractional x column, ties by lowest index.
    int branch = -1;
    double best_dist = 0.0;
    for (int c = 0; c < model.num_x(); ++c) {
      const double v = sol.values[model.first_x_col + c];
      const double dist = std::min(v, 1.0 - v);
      if (dist > kIntegralityTol && dist > best_dist) {
        best_dist = dist;
        branch = c;
      }
    }
    // Rounding down is always feasible: capacity rows have nonnegative x
    // coefficients and coverage rows are repaired by completed_objective.
    std::vector<double> floor_values = sol.values;
    for (int c = 0; c < model.num_x(); ++c) {
      double& v = floor_values[model.first_x_col + c];
      v = v >= 1.0 - kIntegralityTol ? 1.0 : 0.0;
    }
    const double floor_obj = completed_objective(model, floor_values);
    if (floor_obj > res.objective) {
      res.objective = floor_obj;
      best_values = floor_values;
    }
    if (branch < 0) continue;

    auto basis = std::make_shared<const lp::Basis>(std::move(sol.basis));
    for (std::int8_t v : {std::int8_t{1}, std::int8_t{0}}) {
      detail::BbNode child{bound, node.depth + 1, next_id++, node.fixings, basis};
      child.fixings.push_back({branch, v});
      open.push(std::move(child));
    }
  }

  double bound = res.objective;
  if (stopped) {
    res.status = lp::Status::kTimeLimit;
    while (!open.empty()) {
      bound = std::max(bound, open.top().bound);
      open.pop();
    }
  }
  res.bound = bound;
  if (!best_values.empty()) {
    for (int c = 0; c < model.num_x(); ++c) {
      res.x.x[model.x_var[c]] = best_values[model.first_x_col + c];
    }
  }
  return res;
}

}  // namespace ndd
