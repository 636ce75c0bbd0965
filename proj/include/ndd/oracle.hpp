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

// Exact optimum for tiny instances by depth-first enumeration of one
// optional truck per lane.

#pragma once

#include <string>
#include <vector>

#include "ndd/errors.hpp"
#include "ndd/model.hpp"
#include "ndd/objective.hpp"

namespace ndd {

inline constexpr double kOracleGuard = 1e8;

struct ExactResult {
  Schedule schedule;
  double value = 0.0;
  long long nodes = 0;
};

// Product over usable lanes of (deadline + 1).
inline double search_space_size(const Network& net) {
  double size = 1.0;
  for (const Lane& l : net.lanes()) size *= l.deadline + 1.0;
  return size;
}

inline bool oracle_fits(const Problem& p) {
  return search_space_size(p.network()) <= kOracleGuard;
}

namespace detail {

class ExactSearch {
 public:
  ExactSearch(const Problem& p, Variant v, bool prune)
      : p_(p), variant_(v), prune_(prune), state_(p), ledger_(p.instance(), p.network()) {}

  ExactResult run() {
    best_ = Schedule{};
    best_value_ = 0.0;
    dfs(0);
    return {best_, best_value_, nodes_};
  }

 private:
  void dfs(int lane) {
    ++nodes_;
    const Network& net = p_.network();
    const int n = static_cast<int>(net.lanes().size());
    if (state_.g() > best_value_) {
      best_value_ = state_.g();
      best_ = state_.schedule();
    }
    if (lane == n) return;
    if (prune_ && bound(lane) <= best_value_) return;
    dfs(lane + 1);
    const Lane& l = net.lane(lane);
    for (int t = 1; t <= l.deadline; ++t) {
      if (!ledger_.fits(lane, t, variant_)) continue;
      const Truck truck{l.fc, l.ds, t};
      state_.apply(truck);
      ledger_.add(lane, t);
      dfs(lane + 1);
      ledger_.add(lane, t, -1);
      state_.remove(truck);
    }
  }

  // Optimistic value of any completion: each remaining lane adds at most its
  // gain at the deadline, and coverage never exceeds total demand.
  double bound(int lane) const {
    const Network& net = p_.network();
    double extra = 0.0;
    for (int k = lane; k < static_cast<int>(net.lanes().size()); ++k) {
      const Lane& l = net.lane(k);
      extra += state_.marginal_gain({l.fc, l.ds, l.deadline});
    }
    return state_.g() + std::min(extra, p_.coverage().total_demand() - state_.g());
  }

  const Problem& p_;
  Variant variant_;
  bool prune_;
  CoverageState state_;
  CapacityLedger ledger_;
  Schedule best_;
  double best_value_ = 0.0;
  long long nodes_ = 0;
};

}  // namespace detail

// Returns the first optimal schedule in enumeration order (lanes by (fc, ds),
// per lane: no truck, then slots ascending).
inline ExactResult solve_exact(const Problem& p, Variant v, bool prune = true) {
  const double size = search_space_size(p.network());
  if (size > kOracleGuard) {
    throw InvalidInput("oracle search space " + std::to_string(size) +
                       " exceeds the guard of 1e8");
  }
  return detail::ExactSearch(p, v, prune).run();
}

// Two FCs, one DS, two products, three slots. FC1 stocks product 1 and
// reaches DS1 in one slot, FC2 stocks product 2 and needs two; the DS cutoff
// is slot 3, so FC1 may depart up to slot 2 and FC2 only at slot 1.
inline Instance make_t1() {
  Instance inst = Instance::empty(2, 1, 2, 3);
  inst.set_stock(0, 0);
  inst.set_stock(1, 1);
  inst.set_transit(0, 0, 1.0);
  inst.set_transit(1, 0, 2.0);
  inst.arrival_deadline = {3};
  inst.add_demand(0, 0, 1, 5.0);
  inst.add_demand(0, 0, 2, 3.0);
  inst.add_demand(0, 1, 1, 4.0);
  inst.normalize_demand();
  inst.ob_capacity = {1, 1};
  inst.ib_capacity = {1};
  return inst;
}

}  // namespace ndd
