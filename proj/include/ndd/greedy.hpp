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

// Lazy greedy over (lane, slot) trucks, the random-order naive benchmark and
// the feasibility repair used by the Lagrangian loops.

#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <random>
#include <tuple>
#include <vector>

#include "ndd/model.hpp"
#include "ndd/objective.hpp"
#include "ndd/rng.hpp"

namespace ndd {

struct GreedyOptions {
  // Lanes the greedy may use; empty means all.
  std::vector<char> lane_allowed;
  // Per-lane cap on the departure slot (0: lane deadline); empty means none.
  std::vector<int> lane_max_slot;
  // Trucks placed before the greedy starts; they count against capacities
  // and coverage but are not revisited.
  Schedule fixed;
};

namespace detail {

struct GreedyEntry {
  double gain;
  int slot;
  int fc;
  int ds;
  int lane;
  std::uint64_t epoch;

  // Max-heap order: gain, later slot, lower fc, lower ds.
  bool operator<(const GreedyEntry& o) const {
    if (gain != o.gain) return gain < o.gain;
    if (slot != o.slot) return slot < o.slot;
    if (fc != o.fc) return fc > o.fc;
    return ds > o.ds;
  }
};

inline int latest_fitting_slot(const CapacityLedger& ledger, int lane, int from, Variant v) {
  for (int t = from; t >= 1; --t) {
    if (ledger.fits(lane, t, v)) return t;
  }
  return 0;
}

}  // namespace detail

inline Schedule greedy_solve(const Problem& p, Variant variant, const GreedyOptions& opt = {}) {
  const Network& net = p.network();
  const int num_lanes = static_cast<int>(net.lanes().size());
  if (!opt.lane_allowed.empty() && static_cast<int>(opt.lane_allowed.size()) != num_lanes) {
    throw InvalidInput("lane mask has wrong size");
  }
  if (!opt.lane_max_slot.empty() && static_cast<int>(opt.lane_max_slot.size()) != num_lanes) {
    throw InvalidInput("lane slot caps have wrong size");
  }
  CoverageState state(p);
  CapacityLedger ledger(p.instance(), net);
  for (const Truck& t : opt.fixed) {
    state.apply(t);
    ledger.add(net.lane_id(t.fc, t.ds), t.slot);
  }
  // Coverage of lane (i, j) only depends on trucks into j.
  std::vector<std::uint64_t> epoch(net.num_dss(), 0);

  std::priority_queue<detail::GreedyEntry> heap;
  for (int lane = 0; lane < num_lanes; ++lane) {
    if (!opt.lane_allowed.empty() && !opt.lane_allowed[lane]) continue;
    const Lane& l = net.lane(lane);
    int cap = l.deadline;
    if (!opt.lane_max_slot.empty() && opt.lane_max_slot[lane] > 0) {
      cap = std::min(cap, opt.lane_max_slot[lane]);
    }
    const int slot = detail::latest_fitting_slot(ledger, lane, cap, variant);
    if (slot == 0) continue;
    heap.push({state.marginal_gain({l.fc, l.ds, slot}), slot, l.fc, l.ds, lane, epoch[l.ds]});
  }

  while (!heap.empty()) {
    detail::GreedyEntry e = heap.top();
    heap.pop();
    if (e.gain <= 0.0) break;  // keys bound the true gains from above
    if (!ledger.fits(e.lane, e.slot, variant)) {
      e.slot = detail::latest_fitting_slot(ledger, e.lane, e.slot - 1, variant);
      if (e.slot == 0) continue;
      e.gain = state.marginal_gain({e.fc, e.ds, e.slot});
      e.epoch = epoch[e.ds];
      heap.push(e);
      continue;
    }
    if (e.epoch != epoch[e.ds]) {
      e.gain = state.marginal_gain({e.fc, e.ds, e.slot});
      e.epoch = epoch[e.ds];
      heap.push(e);
      continue;
    }
    state.apply({e.fc, e.ds, e.slot});
    ledger.add(e.lane, e.slot);
    ++epoch[e.ds];
  }
  return state.schedule();
}

// Lanes in random order, each at its latest slot that still fits.
inline Schedule naive_benchmark(const Problem& p, Variant variant, std::uint64_t seed) {
  const Network& net = p.network();
  std::vector<int> order(net.lanes().size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  auto rng = substream(seed, "naive");
  std::shuffle(order.begin(), order.end(), rng);
  CapacityLedger ledger(p.instance(), net);
  Schedule s;
  for (int lane : order) {
    const Lane& l = net.lane(lane);
    const int slot = detail::latest_fitting_slot(ledger, lane, l.deadline, variant);
    if (slot == 0) continue;
    ledger.add(lane, slot);
    s.insert({l.fc, l.ds, slot});
  }
  return s;
}

struct RepairOptions {
  // Refill a removed lane no later than its removed truck. Coverage can then
  // only shrink, at the price of weaker repairs.
  bool cap_at_removed_slot = false;
};

// Makes a schedule FULL-feasible. In every over-capacity OB or IB group the
// trucks with the largest removal loss are kept (ties: earlier slot, then
// lower lane index); removed lanes are then refilled greedily around the
// kept trucks.
inline Schedule greedy_feasibility(const Problem& p, const Schedule& schedule,
                                   const RepairOptions& repair = {}) {
  const Instance& inst = p.instance();
  const Network& net = p.network();
  CoverageState state(p);
  for (const Truck& t : schedule) state.apply(t);

  const FeasibilityReport report = check_feasible(schedule, inst, Variant::kFull);
  if (report.ok()) return schedule;

  std::vector<int> max_slot(net.lanes().size(), 0);
  std::vector<char> removed(net.lanes().size(), 0);
  for (const Violation& v : report.violations) {
    if (v.kind == ViolationKind::kForbiddenSlot) {
      throw InvalidInput("schedule places a truck on a forbidden slot");
    }
    // Trucks currently in the group.
    std::vector<Truck> members;
    for (const Truck& t : state.schedule()) {
      const bool in_group =
          v.kind == ViolationKind::kOutbound
              ? (t.fc == v.node && t.slot == v.slot)
              : (t.ds == v.node && net.arrival_slot(net.lane_id(t.fc, t.ds), t.slot) == v.slot);
      if (in_group) members.push_back(t);
    }
    const int cap = v.kind == ViolationKind::kOutbound ? inst.ob_capacity[v.node]
                                                       : inst.ib_capacity[v.node];
    if (static_cast<int>(members.size()) <= cap) continue;
    std::vector<std::tuple<double, int, int, Truck>> ranked;
    for (const Truck& t : members) {
      ranked.push_back({-state.removal_loss(t), t.slot, net.lane_id(t.fc, t.ds), t});
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
             std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
    });
    for (std::size_t k = cap; k < ranked.size(); ++k) {
      const Truck& t = std::get<3>(ranked[k]);
      const int lane = std::get<2>(ranked[k]);
      state.remove(t);
      removed[lane] = 1;
      max_slot[lane] = std::max(max_slot[lane], t.slot);
    }
  }
  GreedyOptions opt;
  opt.fixed = state.schedule();
  opt.lane_allowed = removed;
  if (repair.cap_at_removed_slot) opt.lane_max_slot = max_slot;
  return greedy_solve(p, Variant::kFull, opt);
}

}  // namespace ndd
