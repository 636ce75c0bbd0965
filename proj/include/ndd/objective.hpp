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

// Coverage objective g, the clamped surrogate f, the rho(mT) factor, and
// incremental evaluators used by the constructive and rounding algorithms.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "ndd/errors.hpp"
#include "ndd/model.hpp"

namespace ndd {

// Demand of one (ds, product) pair with nonzero total demand, as prefix sums
// over slots, plus the usable lanes whose FC stocks the product.
struct DemandCell {
  int ds = 0;
  int product = 0;
  int first_slot = 0;          // earliest slot with positive demand
  std::vector<double> prefix;  // prefix[t] = sum_{t' <= t} d, t = 0..T
  std::vector<int> covering_lanes;

  double demand_at(int t) const { return prefix[t] - prefix[t - 1]; }
  double total() const { return prefix.back(); }
};

class CoverageIndex {
 public:
  CoverageIndex(const Instance& inst, const Network& net)
      : num_slots_(inst.num_slots),
        num_products_(inst.num_products),
        cell_of_(static_cast<std::size_t>(inst.num_dss) * inst.num_products, -1),
        ds_begin_(inst.num_dss + 1, 0),
        lane_cells_(net.lanes().size()) {
    for (const DemandEntry& e : inst.demand) {
      int& id = cell_of_[static_cast<std::size_t>(e.ds) * num_products_ + e.product];
      if (id < 0) {
        id = static_cast<int>(cells_.size());
        DemandCell c;
        c.ds = e.ds;
        c.product = e.product;
        c.first_slot = e.slot;
        c.prefix.assign(num_slots_ + 1, 0.0);
        cells_.push_back(std::move(c));
      }
      DemandCell& c = cells_[id];
      c.first_slot = std::min(c.first_slot, e.slot);
      c.prefix[e.slot] += e.amount;
    }
    for (DemandCell& c : cells_) {
      for (int t = 1; t <= num_slots_; ++t) c.prefix[t] += c.prefix[t - 1];
      for (int lane : net.lanes_into(c.ds)) {
        if (inst.stocks(net.lane(lane).fc, c.product)) c.covering_lanes.push_back(lane);
      }
      total_ += c.total();
    }
    for (const DemandCell& c : cells_) ++ds_begin_[c.ds + 1];
    for (std::size_t j = 1; j < ds_begin_.size(); ++j) ds_begin_[j] += ds_begin_[j - 1];
    for (int id = 0; id < static_cast<int>(cells_.size()); ++id) {
      for (int lane : cells_[id].covering_lanes) lane_cells_[lane].push_back(id);
    }
  }

  std::span<const DemandCell> cells() const { return cells_; }
  const DemandCell& cell(int id) const { return cells_[id]; }
  int cell_id(int ds, int product) const {
    return cell_of_[static_cast<std::size_t>(ds) * num_products_ + product];
  }
  // Cells are stored grouped by DS in increasing (ds, product) order.
  std::pair<int, int> ds_cells(int ds) const { return {ds_begin_[ds], ds_begin_[ds + 1]}; }
  std::span<const int> lane_cells(int lane) const { return lane_cells_[lane]; }
  double total_demand() const { return total_; }

 private:
  int num_slots_;
  int num_products_;
  std::vector<DemandCell> cells_;
  std::vector<int> cell_of_;
  std::vector<int> ds_begin_;
  std::vector<std::vector<int>> lane_cells_;
  double total_ = 0.0;
};

// Instance plus its derived structures; immutable and freely shareable.
class Problem {
 public:
  explicit Problem(Instance inst)
      : inst_(std::move(inst)), net_(inst_), cov_(inst_, net_) {}

  const Instance& instance() const { return inst_; }
  const Network& network() const { return net_; }
  const CoverageIndex& coverage() const { return cov_; }

 private:
  Instance inst_;
  Network net_;
  CoverageIndex cov_;
};

// Continuous point over the allowed (lane, slot) variables of a Network.
struct FractionalSolution {
  std::vector<double> x;

  static FractionalSolution zeros(const Network& net) {
    return {std::vector<double>(net.num_vars(), 0.0)};
  }
  static FractionalSolution from_schedule(const Network& net, const Schedule& s) {
    FractionalSolution out = zeros(net);
    for (const Truck& t : s) {
      const int lane = net.lane_id(t.fc, t.ds);
      if (lane < 0 || t.slot < 1 || t.slot > net.lane(lane).deadline) {
        throw InvalidInput("schedule places a truck on a forbidden slot");
      }
      out.x[net.var(lane, t.slot)] = 1.0;
    }
    return out;
  }
};

inline constexpr double kIntegralityTol = 1e-9;

inline bool is_fractional(double v) {
  return std::abs(v - std::round(v)) > kIntegralityTol;
}

inline int count_fractional(std::span<const double> x) {
  return static_cast<int>(std::count_if(x.begin(), x.end(), is_fractional));
}

// Trucks for every variable rounding to 1.
inline Schedule to_schedule(const Network& net, const FractionalSolution& sol) {
  Schedule s;
  for (int v = 0; v < net.num_vars(); ++v) {
    if (sol.x[v] > 0.5) s.insert(net.var_truck(v));
  }
  return s;
}

inline void validate_point(const Network& net, const FractionalSolution& sol) {
  if (static_cast<int>(sol.x.size()) != net.num_vars()) {
    throw InvalidInput("fractional solution has wrong dimension");
  }
  for (double v : sol.x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidInput("fractional entries must lie in [0,1]");
    }
  }
}

// rho(x) = 1 - (1 - 1/x)^x.
inline double rho(long long x) {
  if (x < 1) throw InvalidInput("rho is defined for x >= 1");
  if (x == 1) return 1.0;
  const double xd = static_cast<double>(x);
  return -std::expm1(xd * std::log1p(-1.0 / xd));
}

// Latest covering slot per cell for an integral schedule. Trucks on unusable
// lanes are evaluated by the formula like any other truck.
inline std::vector<int> latest_cover(const Problem& p, const Schedule& s) {
  const Instance& inst = p.instance();
  const CoverageIndex& cov = p.coverage();
  std::vector<int> latest(cov.cells().size(), 0);
  for (const Truck& t : s) {
    check_truck_indices(t, inst);
    const auto [b, e] = cov.ds_cells(t.ds);
    for (int c = b; c < e; ++c) {
      if (inst.stocks(t.fc, cov.cell(c).product)) latest[c] = std::max(latest[c], t.slot);
    }
  }
  return latest;
}

inline double eval_g(const Problem& p, const Schedule& s) {
  const std::vector<int> latest = latest_cover(p, s);
  double g = 0.0;
  for (std::size_t c = 0; c < latest.size(); ++c) g += p.coverage().cell(c).prefix[latest[c]];
  return g;
}

// On integral points the clamp-form surrogate coincides with g.
inline double eval_f(const Problem& p, const Schedule& s) { return eval_g(p, s); }

namespace detail {

// Value of one cell under g (product form) or f (clamped sum form).
template <bool kProductForm, typename XAt>
double cell_value(const Network& net, const DemandCell& c, int num_slots, XAt&& x_at) {
  double prod = 1.0;
  double sum = 0.0;
  double value = 0.0;
  for (int t = num_slots; t >= c.first_slot; --t) {
    for (int lane : c.covering_lanes) {
      if (t <= net.lane(lane).deadline) {
        const double xv = x_at(net.var(lane, t));
        if constexpr (kProductForm) {
          prod *= 1.0 - xv;
        } else {
          sum += xv;
        }
      }
    }
    const double d = c.demand_at(t);
    if (d != 0.0) {
      value += d * (kProductForm ? 1.0 - prod : std::min(1.0, sum));
    }
  }
  return value;
}

}  // namespace detail

inline double eval_g(const Problem& p, const FractionalSolution& sol) {
  validate_point(p.network(), sol);
  double g = 0.0;
  for (const DemandCell& c : p.coverage().cells()) {
    g += detail::cell_value<true>(p.network(), c, p.instance().num_slots,
                                  [&](int v) { return sol.x[v]; });
  }
  return g;
}

inline double eval_f(const Problem& p, const FractionalSolution& sol) {
  validate_point(p.network(), sol);
  double f = 0.0;
  for (const DemandCell& c : p.coverage().cells()) {
    f += detail::cell_value<false>(p.network(), c, p.instance().num_slots,
                                   [&](int v) { return sol.x[v]; });
  }
  return f;
}

// Incremental g for integral schedules on usable lanes: per cell the latest
// covering slot and per-slot truck counts.
class CoverageState {
 public:
  explicit CoverageState(const Problem& p)
      : p_(&p),
        stride_(p.instance().num_slots + 1),
        latest_(p.coverage().cells().size(), 0),
        counts_(p.coverage().cells().size() * stride_, 0) {}

  double g() const { return g_; }
  const Schedule& schedule() const { return schedule_; }
  int latest(int cell) const { return latest_[cell]; }

  double marginal_gain(const Truck& t) const {
    const int lane = lane_of(t);
    double gain = 0.0;
    for (int c : p_->coverage().lane_cells(lane)) {
      const int l = latest_[c];
      if (t.slot > l) {
        const auto& pre = p_->coverage().cell(c).prefix;
        gain += pre[t.slot] - pre[l];
      }
    }
    return gain;
  }

  // g(S) - g(S \ {t}) for a truck in S.
  double removal_loss(const Truck& t) const {
    if (!schedule_.contains(t)) throw InvalidInput("truck not in schedule");
    const int lane = lane_of(t);
    double loss = 0.0;
    for (int c : p_->coverage().lane_cells(lane)) {
      if (latest_[c] != t.slot || count(c, t.slot) > 1) continue;
      const int below = next_below(c, t.slot);
      const auto& pre = p_->coverage().cell(c).prefix;
      loss += pre[t.slot] - pre[below];
    }
    return loss;
  }

  // Returns the realized gain.
  double apply(const Truck& t) {
    const int lane = lane_of(t);
    if (!schedule_.insert(t)) throw InvalidInput("truck already scheduled");
    double gain = 0.0;
    for (int c : p_->coverage().lane_cells(lane)) {
      ++counts_[c * stride_ + t.slot];
      const int l = latest_[c];
      if (t.slot > l) {
        const auto& pre = p_->coverage().cell(c).prefix;
        gain += pre[t.slot] - pre[l];
        latest_[c] = t.slot;
      }
    }
    g_ += gain;
    return gain;
  }

  // Returns the realized loss.
  double remove(const Truck& t) {
    if (!schedule_.erase(t)) throw InvalidInput("removing a truck that is not scheduled");
    const int lane = lane_of(t);
    double loss = 0.0;
    for (int c : p_->coverage().lane_cells(lane)) {
      --counts_[c * stride_ + t.slot];
      if (latest_[c] == t.slot && count(c, t.slot) == 0) {
        const int below = next_below(c, t.slot);
        const auto& pre = p_->coverage().cell(c).prefix;
        loss += pre[t.slot] - pre[below];
        latest_[c] = below;
      }
    }
    g_ -= loss;
    return loss;
  }

 private:
  int lane_of(const Truck& t) const {
    check_truck_indices(t, p_->instance());
    const int lane = p_->network().lane_id(t.fc, t.ds);
    if (lane < 0 || t.slot > p_->network().lane(lane).deadline) {
      throw InvalidInput("truck on a forbidden slot");
    }
    return lane;
  }
  int count(int c, int slot) const { return counts_[c * stride_ + slot]; }
  int next_below(int c, int slot) const {
    for (int s = slot - 1; s >= 1; --s) {
      if (count(c, s) > 0) return s;
    }
    return 0;
  }

  const Problem* p_;
  std::size_t stride_;
  std::vector<int> latest_;
  std::vector<int> counts_;
  Schedule schedule_;
  double g_ = 0.0;
};

// One coordinate change of a fractional point.
struct Change {
  int var = 0;
  double value = 0.0;
};

// Fractional point with cached per-cell g values and optional linear terms
// (Lagrangian penalties). value() = g(x) + sum_v weight_v * x_v + constant.
class FractionalObjective {
 public:
  FractionalObjective(const Problem& p, FractionalSolution x0,
                      std::vector<double> weights = {}, double constant = 0.0)
      : p_(&p), x_(std::move(x0.x)), weights_(std::move(weights)), constant_(constant) {
    validate_point(p.network(), {x_});
    if (!weights_.empty() && weights_.size() != x_.size()) {
      throw InvalidInput("linear weight vector has wrong dimension");
    }
    cell_value_.resize(p.coverage().cells().size());
    for (std::size_t c = 0; c < cell_value_.size(); ++c) {
      cell_value_[c] = compute_cell(static_cast<int>(c), {});
      g_ += cell_value_[c];
    }
    for (std::size_t v = 0; v < weights_.size(); ++v) linear_ += weights_[v] * x_[v];
  }

  double value() const { return g_ + linear_ + constant_; }
  double g() const { return g_; }
  const std::vector<double>& x() const { return x_; }
  double x(int v) const { return x_[v]; }
  const Problem& problem() const { return *p_; }
  const std::vector<double>& weights() const { return weights_; }
  double constant() const { return constant_; }

  // Change of value() if the given coordinates were set.
  double delta(std::span<const Change> changes) const {
    double d = 0.0;
    for_each_cell(changes, [&](int c) { d += compute_cell(c, changes) - cell_value_[c]; });
    return d + linear_delta(changes);
  }

  // Sets the coordinates; any number of lanes. Returns the change of value().
  double apply(std::span<const Change> changes) {
    const double before = value();
    linear_ += linear_delta(changes);
    for (const Change& ch : changes) x_[ch.var] = ch.value;
    for_each_cell(changes, [&](int c) {
      const double nv = compute_cell(c, {});
      g_ += nv - cell_value_[c];
      cell_value_[c] = nv;
    }, /*bounded=*/false);
    return value() - before;
  }

 private:
  double linear_delta(std::span<const Change> changes) const {
    if (weights_.empty()) return 0.0;
    double d = 0.0;
    for (const Change& ch : changes) d += weights_[ch.var] * (ch.value - x_[ch.var]);
    return d;
  }

  // delta() looks coordinates up by linear scan, so it is limited to small
  // change sets; apply() writes x first and has no limit.
  template <typename F>
  void for_each_cell(std::span<const Change> changes, F&& f, bool bounded = true) const {
    const Network& net = p_->network();
    std::vector<int> lanes;
    for (const Change& ch : changes) {
      const int lane = net.var_lane(ch.var);
      if (std::find(lanes.begin(), lanes.end(), lane) != lanes.end()) continue;
      if (bounded && lanes.size() == 8) {
        throw InternalError("too many lanes in a single change set");
      }
      lanes.push_back(lane);
    }
    std::vector<int> cells;
    for (int lane : lanes) {
      for (int c : p_->coverage().lane_cells(lane)) cells.push_back(c);
    }
    if (lanes.size() > 1) {
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    }
    for (int c : cells) f(c);
  }

  double compute_cell(int c, std::span<const Change> changes) const {
    return detail::cell_value<true>(
        p_->network(), p_->coverage().cell(c), p_->instance().num_slots, [&](int v) {
          for (const Change& ch : changes) {
            if (ch.var == v) return ch.value;
          }
          return x_[v];
        });
  }

  const Problem* p_;
  std::vector<double> x_;
  std::vector<double> weights_;
  double constant_ = 0.0;
  std::vector<double> cell_value_;
  double g_ = 0.0;
  double linear_ = 0.0;
};

}  // namespace ndd
