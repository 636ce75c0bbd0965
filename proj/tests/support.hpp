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

// Test fixtures and reference implementations written directly from the
// model definitions, independent of the library's derived structures.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "ndd/ndd.hpp"

namespace ndd::testing {

struct TinySpec {
  int max_fcs = 3;
  int max_dss = 3;
  int max_products = 4;
  int max_slots = 4;
  int max_capacity = 2;
  double lane_prob = 0.8;
  double stock_prob = 0.6;
  double demand_prob = 0.5;
};

// Random small instance. Deadlines lean towards the horizon end and transit
// times are drawn below the DS deadline, so most lanes are usable; a few
// lanes are made too long on purpose.
inline Instance random_instance(std::uint64_t seed, const TinySpec& s = {}) {
  std::mt19937_64 rng(seed * 7919 + 17);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  // Mostly full-size, occasionally degenerate dimensions.
  auto dim = [&](int hi) { return coin(0.15) ? uni(1, hi) : uni(std::max(1, hi - 1), hi); };
  const int I = dim(s.max_fcs);
  const int J = dim(s.max_dss);
  const int K = dim(s.max_products);
  const int T = dim(s.max_slots);
  Instance inst = Instance::empty(I, J, K, T);
  for (int j = 0; j < J; ++j) inst.arrival_deadline[j] = coin(0.6) ? T : uni(1, T);
  for (int i = 0; i < I; ++i) {
    for (int j = 0; j < J; ++j) {
      if (!coin(s.lane_prob)) continue;
      const int ad = inst.arrival_deadline[j];
      double h = 0.0;
      if (coin(0.1)) {
        h = ad;
      } else if (coin(0.5)) {
        h = uni(0, ad - 1);
      } else {
        h = std::uniform_real_distribution<double>(0.0, ad - 1.0)(rng);
      }
      inst.set_transit(i, j, h);
    }
    for (int k = 0; k < K; ++k) inst.set_stock(i, k, coin(s.stock_prob));
  }
  for (int j = 0; j < J; ++j) {
    for (int k = 0; k < K; ++k) {
      for (int t = 1; t <= T; ++t) {
        if (coin(s.demand_prob)) inst.add_demand(j, k, t, uni(1, 9));
      }
    }
  }
  inst.normalize_demand();
  for (int& c : inst.ob_capacity) c = uni(1, s.max_capacity);
  for (int& c : inst.ib_capacity) c = uni(1, s.max_capacity);
  return inst;
}

// All (fc, ds, slot) a truck may use: finite transit and slot <= deadline.
inline std::vector<Truck> allowed_trucks(const Instance& inst) {
  std::vector<Truck> out;
  for (int i = 0; i < inst.num_fcs; ++i) {
    for (int j = 0; j < inst.num_dss; ++j) {
      const double h = inst.transit_hours(i, j);
      if (!std::isfinite(h)) continue;
      for (int t = 1; t <= inst.num_slots; ++t) {
        if (t + std::ceil(h) <= inst.arrival_deadline[j] && t <= inst.arrival_deadline[j] - h) {
          out.push_back({i, j, t});
        }
      }
    }
  }
  return out;
}

using PointMap = std::map<std::tuple<int, int, int>, double>;

// g and f straight from their sum/product definitions over demand triples.
inline double ref_g(const Instance& inst, const PointMap& x) {
  double total = 0.0;
  for (const DemandEntry& e : inst.demand) {
    double miss = 1.0;
    for (const auto& [key, v] : x) {
      const auto [i, j, tau] = key;
      if (j == e.ds && tau >= e.slot && inst.stocks(i, e.product)) miss *= 1.0 - v;
    }
    total += e.amount * (1.0 - miss);
  }
  return total;
}

inline double ref_f(const Instance& inst, const PointMap& x) {
  double total = 0.0;
  for (const DemandEntry& e : inst.demand) {
    double sum = 0.0;
    for (const auto& [key, v] : x) {
      const auto [i, j, tau] = key;
      if (j == e.ds && tau >= e.slot && inst.stocks(i, e.product)) sum += v;
    }
    total += e.amount * std::min(1.0, sum);
  }
  return total;
}

inline PointMap to_map(const Schedule& s) {
  PointMap m;
  for (const Truck& t : s) m[{t.fc, t.ds, t.slot}] = 1.0;
  return m;
}

inline PointMap to_map(const Network& net, const FractionalSolution& x) {
  PointMap m;
  for (int v = 0; v < net.num_vars(); ++v) {
    const Truck t = net.var_truck(v);
    m[{t.fc, t.ds, t.slot}] = x.x[v];
  }
  return m;
}

inline double ref_g(const Instance& inst, const Schedule& s) { return ref_g(inst, to_map(s)); }

// Capacity check from the definitions.
inline bool ref_feasible(const Instance& inst, const Schedule& s, Variant v) {
  std::map<std::pair<int, int>, int> ob, ib;
  for (const Truck& t : s) {
    const double h = inst.transit_hours(t.fc, t.ds);
    if (!std::isfinite(h) || t.slot > inst.arrival_deadline[t.ds] - h) return false;
    ++ob[{t.fc, t.slot}];
    ++ib[{t.ds, t.slot + static_cast<int>(std::ceil(h))}];
  }
  if (v != Variant::kInbound) {
    for (const auto& [k, n] : ob) {
      if (n > inst.ob_capacity[k.first]) return false;
    }
  }
  if (v != Variant::kOutbound) {
    for (const auto& [k, n] : ib) {
      if (n > inst.ib_capacity[k.first]) return false;
    }
  }
  return true;
}

// Largest capacity-row overflow of a fractional point, from the definitions.
inline double ref_capacity_overflow(const Instance& inst, const PointMap& x, Variant v) {
  std::map<std::pair<int, int>, double> ob, ib;
  for (const auto& [key, val] : x) {
    const auto [i, j, t] = key;
    ob[{i, t}] += val;
    ib[{j, t + static_cast<int>(std::ceil(inst.transit_hours(i, j)))}] += val;
  }
  double worst = 0.0;
  if (v != Variant::kInbound) {
    for (const auto& [k, s] : ob) worst = std::max(worst, s - inst.ob_capacity[k.first]);
  }
  if (v != Variant::kOutbound) {
    for (const auto& [k, s] : ib) worst = std::max(worst, s - inst.ib_capacity[k.first]);
  }
  return worst;
}

// Optimum over every subset of allowed trucks (several per lane allowed).
inline double brute_force_opt(const Instance& inst, Variant v) {
  const std::vector<Truck> all = allowed_trucks(inst);
  if (all.size() > 20) throw std::runtime_error("instance too large for subset enumeration");
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
    Schedule s;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (mask >> k & 1u) s.insert(all[k]);
    }
    if (ref_feasible(inst, s, v)) best = std::max(best, ref_g(inst, s));
  }
  return best;
}

// Optimum over one-truck-per-lane assignments (none or any allowed slot),
// with capacity checked as trucks are placed. Leaves are visited in
// lexicographic order of the per-lane choice vector, so argmax receives the
// lexicographically smallest optimal assignment. Independent of the library
// search: no bound, plain coverage evaluation at the leaves.
inline double lane_enumeration_opt(const Instance& inst, Variant v, Schedule* argmax = nullptr) {
  struct L {
    int fc, ds, deadline, transit;
  };
  std::vector<L> lanes;
  for (int i = 0; i < inst.num_fcs; ++i) {
    for (int j = 0; j < inst.num_dss; ++j) {
      const double h = inst.transit_hours(i, j);
      if (!std::isfinite(h)) continue;
      const int dd = static_cast<int>(std::floor(inst.arrival_deadline[j] - h));
      if (dd >= 1) lanes.push_back({i, j, dd, static_cast<int>(std::ceil(h))});
    }
  }
  const int T = inst.num_slots;
  std::vector<int> ob(inst.num_fcs * (T + 1), 0), ib(inst.num_dss * (2 * T + 2), 0);
  std::vector<int> slot(lanes.size(), 0);
  double best = 0.0;
  auto value = [&] {
    double g = 0.0;
    for (const DemandEntry& e : inst.demand) {
      for (std::size_t l = 0; l < lanes.size(); ++l) {
        if (lanes[l].ds == e.ds && slot[l] >= e.slot && inst.stocks(lanes[l].fc, e.product)) {
          g += e.amount;
          break;
        }
      }
    }
    return g;
  };
  auto rec = [&](auto&& self, std::size_t l) -> void {
    if (l == lanes.size()) {
      const double g = value();
      if (g > best) {
        best = g;
        if (argmax) {
          *argmax = Schedule{};
          for (std::size_t k = 0; k < lanes.size(); ++k) {
            if (slot[k] > 0) argmax->insert({lanes[k].fc, lanes[k].ds, slot[k]});
          }
        }
      }
      return;
    }
    slot[l] = 0;
    self(self, l + 1);
    const L& ln = lanes[l];
    for (int t = 1; t <= ln.deadline; ++t) {
      int& o = ob[ln.fc * (T + 1) + t];
      int& a = ib[ln.ds * (2 * T + 2) + t + ln.transit];
      if (v != Variant::kInbound && o + 1 > inst.ob_capacity[ln.fc]) continue;
      if (v != Variant::kOutbound && a + 1 > inst.ib_capacity[ln.ds]) continue;
      ++o;
      ++a;
      slot[l] = t;
      self(self, l + 1);
      --o;
      --a;
    }
    slot[l] = 0;
  };
  rec(rec, 0);
  return best;
}

// Reference optimum: every subset when small, else per-lane enumeration
// (equal by canonicalization, which frees capacity and keeps g).
inline double reference_opt(const Instance& inst, Variant v) {
  if (allowed_trucks(inst).size() <= 14) return brute_force_opt(inst, v);
  return lane_enumeration_opt(inst, v);
}

// Greedy that recomputes every gain each round, same tie-breaking as the
// lazy version: (gain, later slot, lower fc, lower ds).
inline Schedule nonlazy_greedy(const Problem& p, Variant v) {
  const Network& net = p.network();
  CoverageState state(p);
  CapacityLedger ledger(p.instance(), net);
  std::vector<char> active(net.lanes().size(), 1);
  for (;;) {
    int best_lane = -1;
    int best_slot = 0;
    double best_gain = 0.0;
    for (int lane = 0; lane < static_cast<int>(net.lanes().size()); ++lane) {
      if (!active[lane]) continue;
      const Lane& l = net.lane(lane);
      int slot = 0;
      for (int t = l.deadline; t >= 1; --t) {
        if (ledger.fits(lane, t, v)) {
          slot = t;
          break;
        }
      }
      if (slot == 0) {
        active[lane] = 0;
        continue;
      }
      const double gain = state.marginal_gain({l.fc, l.ds, slot});
      const auto key = std::make_tuple(gain, slot, -l.fc, -l.ds);
      if (best_lane < 0 ||
          key > std::make_tuple(best_gain, best_slot, -net.lane(best_lane).fc,
                                -net.lane(best_lane).ds)) {
        best_lane = lane;
        best_slot = slot;
        best_gain = gain;
      }
    }
    if (best_lane < 0 || best_gain <= 0.0) break;
    const Lane& l = net.lane(best_lane);
    state.apply({l.fc, l.ds, best_slot});
    ledger.add(best_lane, best_slot);
    active[best_lane] = 0;
  }
  return state.schedule();
}

// Random point in [0,1]^n scaled down until it satisfies the capacity rows
// of the variant.
inline FractionalSolution random_feasible_point(const Problem& p, Variant v, std::mt19937_64& rng) {
  const Network& net = p.network();
  const Instance& inst = p.instance();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FractionalSolution x = FractionalSolution::zeros(net);
  for (double& e : x.x) e = u(rng) < 0.3 ? 0.0 : u(rng);
  double scale = 1.0;
  if (v != Variant::kInbound) {
    for (int i = 0; i < inst.num_fcs; ++i) {
      for (int t = 1; t <= inst.num_slots; ++t) {
        double sum = 0.0;
        for (int lane : net.lanes_from(i)) {
          if (t <= net.lane(lane).deadline) sum += x.x[net.var(lane, t)];
        }
        if (sum > inst.ob_capacity[i]) scale = std::min(scale, inst.ob_capacity[i] / sum);
      }
    }
  }
  if (v != Variant::kOutbound) {
    for (int j = 0; j < inst.num_dss; ++j) {
      for (int tau = 1; tau <= inst.num_slots; ++tau) {
        double sum = 0.0;
        for (const Departure& d : net.arrivals().at(j, tau)) sum += x.x[net.var(d.lane, d.slot)];
        if (sum > inst.ib_capacity[j]) scale = std::min(scale, inst.ib_capacity[j] / sum);
      }
    }
  }
  for (double& e : x.x) e *= scale;
  return x;
}

inline int count_fractional_entries(const FractionalSolution& x) {
  int n = 0;
  for (double v : x.x) n += v != 0.0 && v != 1.0;
  return n;
}

inline double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace ndd::testing
