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

// Problem data, derived lane structure, schedules and capacity feasibility.
//
// Index conventions: FCs, DSs and products are 0-based in memory; slots are
// 1-based (slot 0 is reserved for "no valid departure"). Files use 1-based
// indices for everything.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "ndd/errors.hpp"

namespace ndd {

inline constexpr double kNoLane = std::numeric_limits<double>::infinity();

struct DemandEntry {
  int ds = 0;
  int product = 0;
  int slot = 1;
  double amount = 0.0;

  friend bool operator==(const DemandEntry&, const DemandEntry&) = default;
};

struct Instance {
  int num_fcs = 0;
  int num_dss = 0;
  int num_products = 0;
  int num_slots = 0;
  std::vector<double> transit;              // num_fcs x num_dss hours
  std::vector<std::uint8_t> availability;   // num_fcs x num_products
  std::vector<DemandEntry> demand;          // sorted (ds, product, slot), > 0
  std::vector<int> arrival_deadline;        // per ds
  std::vector<int> ob_capacity;             // per fc
  std::vector<int> ib_capacity;             // per ds

  // All lanes absent, nothing stocked, no demand, capacities 1, deadlines T.
  static Instance empty(int fcs, int dss, int products, int slots) {
    if (fcs < 1 || dss < 1 || products < 1 || slots < 1) {
      throw InvalidInput("instance dimensions must be >= 1");
    }
    Instance inst;
    inst.num_fcs = fcs;
    inst.num_dss = dss;
    inst.num_products = products;
    inst.num_slots = slots;
    inst.transit.assign(static_cast<std::size_t>(fcs) * dss, kNoLane);
    inst.availability.assign(static_cast<std::size_t>(fcs) * products, 0);
    inst.arrival_deadline.assign(dss, slots);
    inst.ob_capacity.assign(fcs, 1);
    inst.ib_capacity.assign(dss, 1);
    return inst;
  }

  double transit_hours(int fc, int ds) const {
    return transit[static_cast<std::size_t>(fc) * num_dss + ds];
  }
  void set_transit(int fc, int ds, double hours) {
    transit[static_cast<std::size_t>(fc) * num_dss + ds] = hours;
  }
  bool stocks(int fc, int product) const {
    return availability[static_cast<std::size_t>(fc) * num_products +
                        product] != 0;
  }
  void set_stock(int fc, int product, bool on = true) {
    availability[static_cast<std::size_t>(fc) * num_products + product] =
        on ? 1 : 0;
  }

  // Adds to d_{ds,product,slot}; call normalize_demand() afterwards.
  void add_demand(int ds, int product, int slot, double amount) {
    demand.push_back({ds, product, slot, amount});
  }

  // Sorts, merges duplicates and drops zero entries.
  void normalize_demand() {
    std::sort(demand.begin(), demand.end(),
              [](const DemandEntry& a, const DemandEntry& b) {
                return std::tie(a.ds, a.product, a.slot) <
                       std::tie(b.ds, b.product, b.slot);
              });
    std::vector<DemandEntry> merged;
    merged.reserve(demand.size());
    for (const DemandEntry& e : demand) {
      if (!merged.empty() && merged.back().ds == e.ds &&
          merged.back().product == e.product && merged.back().slot == e.slot) {
        merged.back().amount += e.amount;
      } else {
        merged.push_back(e);
      }
    }
    std::erase_if(merged, [](const DemandEntry& e) { return e.amount == 0.0; });
    demand = std::move(merged);
  }

  double total_demand() const {
    double s = 0.0;
    for (const DemandEntry& e : demand) s += e.amount;
    return s;
  }

  void validate() const {
    if (num_fcs < 1 || num_dss < 1 || num_products < 1 || num_slots < 1) {
      throw InvalidInput("instance dimensions must be >= 1");
    }
    const auto sz = [](auto n) { return static_cast<std::size_t>(n); };
    if (transit.size() != sz(num_fcs) * sz(num_dss) ||
        availability.size() != sz(num_fcs) * sz(num_products) ||
        arrival_deadline.size() != sz(num_dss) ||
        ob_capacity.size() != sz(num_fcs) || ib_capacity.size() != sz(num_dss)) {
      throw InvalidInput("instance array sizes do not match dimensions");
    }
    for (double d : transit) {
      if (std::isnan(d) || d < 0.0) {
        throw InvalidInput("transit times must be nonnegative");
      }
    }
    for (int t : arrival_deadline) {
      if (t < 1 || t > num_slots) {
        throw InvalidInput("arrival deadline outside 1..num_slots");
      }
    }
    for (int c : ob_capacity) {
      if (c < 1) throw InvalidInput("outbound capacities must be >= 1");
    }
    for (int c : ib_capacity) {
      if (c < 1) throw InvalidInput("inbound capacities must be >= 1");
    }
    for (const DemandEntry& e : demand) {
      if (e.ds < 0 || e.ds >= num_dss || e.product < 0 ||
          e.product >= num_products || e.slot < 1 || e.slot > num_slots) {
        throw InvalidInput("demand entry index out of range");
      }
      if (!(e.amount > 0.0) || !std::isfinite(e.amount)) {
        throw InvalidInput("stored demand must be positive and finite");
      }
    }
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Last allowed departure slot on lane (fc, ds); 0 marks an unusable lane.
// Fractional transit is rounded so that no admitted departure arrives late.
inline int departure_deadline(const Instance& inst, int fc, int ds) {
  const double delta = inst.transit_hours(fc, ds);
  if (!std::isfinite(delta)) return 0;
  const double dd = std::floor(inst.arrival_deadline[ds] - delta);
  return dd < 1.0 ? 0 : static_cast<int>(dd);
}

// Whole slots a truck spends on the road.
inline int transit_slots(const Instance& inst, int fc, int ds) {
  return static_cast<int>(std::ceil(inst.transit_hours(fc, ds)));
}

struct Truck {
  int fc = 0;
  int ds = 0;
  int slot = 1;

  friend auto operator<=>(const Truck&, const Truck&) = default;
};

// Set of trucks kept sorted by (fc, ds, slot).
class Schedule {
 public:
  Schedule() = default;
  Schedule(std::initializer_list<Truck> trucks) {
    for (const Truck& t : trucks) insert(t);
  }

  bool insert(const Truck& t) {
    auto it = std::lower_bound(trucks_.begin(), trucks_.end(), t);
    if (it != trucks_.end() && *it == t) return false;
    trucks_.insert(it, t);
    return true;
  }
  bool erase(const Truck& t) {
    auto it = std::lower_bound(trucks_.begin(), trucks_.end(), t);
    if (it == trucks_.end() || *it != t) return false;
    trucks_.erase(it);
    return true;
  }
  bool contains(const Truck& t) const {
    return std::binary_search(trucks_.begin(), trucks_.end(), t);
  }

  std::size_t size() const { return trucks_.size(); }
  bool empty() const { return trucks_.empty(); }
  auto begin() const { return trucks_.begin(); }
  auto end() const { return trucks_.end(); }
  const std::vector<Truck>& trucks() const { return trucks_; }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::vector<Truck> trucks_;
};

// Keeps only the latest truck of every lane. Earlier trucks on the same lane
// cover a subset of the demand the latest one covers, so g is unchanged.
inline Schedule canonicalize(const Schedule& s) {
  Schedule out;
  const auto& v = s.trucks();
  for (std::size_t k = 0; k < v.size(); ++k) {
    const bool last_of_lane = k + 1 == v.size() || v[k + 1].fc != v[k].fc ||
                              v[k + 1].ds != v[k].ds;
    if (last_of_lane) out.insert(v[k]);
  }
  return out;
}

enum class Variant { kOutbound, kInbound, kFull };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kOutbound: return "ob";
    case Variant::kInbound: return "ib";
    case Variant::kFull: return "full";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "ob") return Variant::kOutbound;
  if (s == "ib") return Variant::kInbound;
  if (s == "full") return Variant::kFull;
  throw InvalidInput("unknown variant '" + std::string(s) + "'");
}

inline bool enforces_outbound(Variant v) { return v != Variant::kInbound; }
inline bool enforces_inbound(Variant v) { return v != Variant::kOutbound; }

// Slots t > departure deadline of each lane.
class ForbiddenMask {
 public:
  ForbiddenMask() = default;
  explicit ForbiddenMask(const Instance& inst)
      : num_dss_(inst.num_dss), deadline_(inst.transit.size(), 0) {
    for (int i = 0; i < inst.num_fcs; ++i) {
      for (int j = 0; j < inst.num_dss; ++j) {
        deadline_[static_cast<std::size_t>(i) * num_dss_ + j] =
            departure_deadline(inst, i, j);
      }
    }
  }
  int deadline(int fc, int ds) const {
    return deadline_[static_cast<std::size_t>(fc) * num_dss_ + ds];
  }
  bool is_forbidden(int fc, int ds, int slot) const {
    return slot > deadline(fc, ds);
  }

 private:
  int num_dss_ = 0;
  std::vector<int> deadline_;
};

struct Lane {
  int fc = 0;
  int ds = 0;
  int deadline = 0;       // last allowed departure slot, >= 1
  int transit_slots = 0;  // arrival = departure + transit_slots
  int first_var = 0;      // variable index of slot 1 on this lane
};

struct Departure {
  int fc = 0;
  int slot = 1;
  int lane = 0;
};

// For every (ds, arrival slot) the allowed departures landing there.
class ArrivalIndex {
 public:
  ArrivalIndex() = default;
  ArrivalIndex(int num_dss, int num_slots, std::span<const Lane> lanes)
      : num_slots_(num_slots),
        offsets_(static_cast<std::size_t>(num_dss) * num_slots + 1, 0) {
    for (const Lane& l : lanes) {
      for (int t = 1; t <= l.deadline; ++t) ++offsets_[key(l.ds, t + l.transit_slots) + 1];
    }
    for (std::size_t k = 1; k < offsets_.size(); ++k) offsets_[k] += offsets_[k - 1];
    entries_.resize(offsets_.back());
    std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
    for (int id = 0; id < static_cast<int>(lanes.size()); ++id) {
      const Lane& l = lanes[id];
      for (int t = 1; t <= l.deadline; ++t) {
        entries_[fill[key(l.ds, t + l.transit_slots)]++] = {l.fc, t, id};
      }
    }
  }
  std::span<const Departure> at(int ds, int arrival_slot) const {
    const std::size_t k = key(ds, arrival_slot);
    return {entries_.data() + offsets_[k], entries_.data() + offsets_[k + 1]};
  }

 private:
  std::size_t key(int ds, int slot) const {
    return static_cast<std::size_t>(ds) * num_slots_ + (slot - 1);
  }
  int num_slots_ = 0;
  std::vector<int> offsets_;
  std::vector<Departure> entries_;
};

// Immutable derived view of an instance: usable lanes, masks, the arrival
// index and the indexing of continuous decision variables x_{lane, slot}
// (one per allowed slot).
class Network {
 public:
  explicit Network(const Instance& inst)
      : num_fcs_(inst.num_fcs),
        num_dss_(inst.num_dss),
        num_slots_(inst.num_slots),
        mask_(inst),
        lane_id_(inst.transit.size(), -1),
        from_fc_(inst.num_fcs),
        into_ds_(inst.num_dss) {
    inst.validate();
    for (int i = 0; i < inst.num_fcs; ++i) {
      for (int j = 0; j < inst.num_dss; ++j) {
        const int dd = mask_.deadline(i, j);
        if (dd < 1) continue;
        const int id = static_cast<int>(lanes_.size());
        lanes_.push_back({i, j, dd, transit_slots(inst, i, j), num_vars_});
        num_vars_ += dd;
        lane_id_[static_cast<std::size_t>(i) * num_dss_ + j] = id;
        from_fc_[i].push_back(id);
        into_ds_[j].push_back(id);
      }
    }
    for (const auto& v : into_ds_) {
      max_inbound_degree_ = std::max<int>(max_inbound_degree_, v.size());
    }
    var_lane_.resize(num_vars_);
    for (int id = 0; id < static_cast<int>(lanes_.size()); ++id) {
      for (int t = 0; t < lanes_[id].deadline; ++t) {
        var_lane_[lanes_[id].first_var + t] = id;
      }
    }
    arrivals_ = ArrivalIndex(num_dss_, num_slots_, lanes_);
  }

  int num_fcs() const { return num_fcs_; }
  int num_dss() const { return num_dss_; }
  int num_slots() const { return num_slots_; }
  const ForbiddenMask& forbidden() const { return mask_; }
  const ArrivalIndex& arrivals() const { return arrivals_; }
  // Largest number of usable lanes into a single DS (m).
  int max_inbound_degree() const { return max_inbound_degree_; }

  std::span<const Lane> lanes() const { return lanes_; }
  const Lane& lane(int id) const { return lanes_[id]; }
  int lane_id(int fc, int ds) const {
    return lane_id_[static_cast<std::size_t>(fc) * num_dss_ + ds];
  }
  std::span<const int> lanes_from(int fc) const { return from_fc_[fc]; }
  std::span<const int> lanes_into(int ds) const { return into_ds_[ds]; }

  int num_vars() const { return num_vars_; }
  int var(int lane, int slot) const { return lanes_[lane].first_var + slot - 1; }
  int var_lane(int v) const { return var_lane_[v]; }
  int var_slot(int v) const { return v - lanes_[var_lane_[v]].first_var + 1; }
  Truck var_truck(int v) const {
    const Lane& l = lanes_[var_lane_[v]];
    return {l.fc, l.ds, v - l.first_var + 1};
  }
  int arrival_slot(int lane, int slot) const {
    return slot + lanes_[lane].transit_slots;
  }

 private:
  int num_fcs_ = 0;
  int num_dss_ = 0;
  int num_slots_ = 0;
  ForbiddenMask mask_;
  ArrivalIndex arrivals_;
  std::vector<Lane> lanes_;
  std::vector<int> lane_id_;
  std::vector<std::vector<int>> from_fc_;
  std::vector<std::vector<int>> into_ds_;
  std::vector<int> var_lane_;
  int num_vars_ = 0;
  int max_inbound_degree_ = 0;
};

inline Network build_derived(const Instance& inst) { return Network(inst); }

enum class ViolationKind { kForbiddenSlot, kOutbound, kInbound };

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::kForbiddenSlot: return "forbidden_slot";
    case ViolationKind::kOutbound: return "outbound";
    case ViolationKind::kInbound: return "inbound";
  }
  return "?";
}

// For kForbiddenSlot `node` is the FC and `other` the DS; for kOutbound
// `node` is the FC, for kInbound the DS. `slot` is the departure slot
// (forbidden, outbound) or arrival slot (inbound).
struct Violation {
  ViolationKind kind = ViolationKind::kOutbound;
  int node = 0;
  int other = -1;
  int slot = 0;
  int count = 0;
  int capacity = 0;

  int overflow() const { return count - capacity; }
};

struct FeasibilityReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind, int node, int slot) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) {
                         return v.kind == kind && v.node == node && v.slot == slot;
                       });
  }
};

inline void check_truck_indices(const Truck& t, const Instance& inst) {
  if (t.fc < 0 || t.fc >= inst.num_fcs || t.ds < 0 || t.ds >= inst.num_dss ||
      t.slot < 1 || t.slot > inst.num_slots) {
    throw InvalidInput("truck (" + std::to_string(t.fc + 1) + "," +
                       std::to_string(t.ds + 1) + "," + std::to_string(t.slot) +
                       ") out of range");
  }
}

// Checks the forbidden-slot constraint always, plus the capacity families the
// variant enforces. Capacity counts include every listed truck (also earlier
// trucks on the same lane).
inline FeasibilityReport check_feasible(const Schedule& s, const Instance& inst,
                                        Variant variant) {
  FeasibilityReport report;
  std::map<std::pair<int, int>, int> outbound;
  std::map<std::pair<int, int>, int> inbound;
  for (const Truck& t : s) {
    check_truck_indices(t, inst);
    const int dd = departure_deadline(inst, t.fc, t.ds);
    if (t.slot > dd) {
      report.violations.push_back(
          {ViolationKind::kForbiddenSlot, t.fc, t.ds, t.slot, 1, 0});
    }
    ++outbound[{t.fc, t.slot}];
    if (std::isfinite(inst.transit_hours(t.fc, t.ds))) {
      ++inbound[{t.ds, t.slot + transit_slots(inst, t.fc, t.ds)}];
    }
  }
  if (enforces_outbound(variant)) {
    for (const auto& [key, n] : outbound) {
      const int cap = inst.ob_capacity[key.first];
      if (n > cap) {
        report.violations.push_back(
            {ViolationKind::kOutbound, key.first, -1, key.second, n, cap});
      }
    }
  }
  if (enforces_inbound(variant)) {
    for (const auto& [key, n] : inbound) {
      const int cap = inst.ib_capacity[key.first];
      if (n > cap) {
        report.violations.push_back(
            {ViolationKind::kInbound, key.first, -1, key.second, n, cap});
      }
    }
  }
  return report;
}

inline bool is_feasible(const Schedule& s, const Instance& inst, Variant v) {
  return check_feasible(s, inst, v).ok();
}

// Incremental capacity usage for constructive algorithms on usable lanes.
class CapacityLedger {
 public:
  CapacityLedger(const Instance& inst, const Network& net)
      : inst_(&inst),
        net_(&net),
        outbound_(static_cast<std::size_t>(inst.num_fcs) * (inst.num_slots + 1), 0),
        inbound_(static_cast<std::size_t>(inst.num_dss) * (inst.num_slots + 1), 0) {}

  bool fits(int lane, int slot, Variant v) const {
    const Lane& l = net_->lane(lane);
    if (slot < 1 || slot > l.deadline) return false;
    if (enforces_outbound(v) && ob(l.fc, slot) >= inst_->ob_capacity[l.fc]) {
      return false;
    }
    const int arr = slot + l.transit_slots;
    if (enforces_inbound(v) && ib(l.ds, arr) >= inst_->ib_capacity[l.ds]) {
      return false;
    }
    return true;
  }
  void add(int lane, int slot, int delta = 1) {
    const Lane& l = net_->lane(lane);
    ob_ref(l.fc, slot) += delta;
    ib_ref(l.ds, slot + l.transit_slots) += delta;
  }
  int ob(int fc, int slot) const {
    return outbound_[static_cast<std::size_t>(fc) * (inst_->num_slots + 1) + slot];
  }
  int ib(int ds, int slot) const {
    return inbound_[static_cast<std::size_t>(ds) * (inst_->num_slots + 1) + slot];
  }

 private:
  int& ob_ref(int fc, int slot) {
    return outbound_[static_cast<std::size_t>(fc) * (inst_->num_slots + 1) + slot];
  }
  int& ib_ref(int ds, int slot) {
    return inbound_[static_cast<std::size_t>(ds) * (inst_->num_slots + 1) + slot];
  }
  const Instance* inst_;
  const Network* net_;
  std::vector<int> outbound_;
  std::vector<int> inbound_;
};

}  // namespace ndd
