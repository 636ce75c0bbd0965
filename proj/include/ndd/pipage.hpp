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

// Pipage rounding of fractional points along one-dimensional directions
// inside a capacity group: an OB row (fc, slot) or an IB arrival group
// (ds, arrival slot). The one-truck-per-lane rows are not part of the model,
// so every group can be rounded independently of the others.

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "ndd/errors.hpp"
#include "ndd/model.hpp"
#include "ndd/objective.hpp"
#include "ndd/parallel.hpp"

namespace ndd {

enum class PipageStrategy { kOOF, kOOU, kOES };

inline std::string_view to_string(PipageStrategy s) {
  switch (s) {
    case PipageStrategy::kOOF: return "oof";
    case PipageStrategy::kOOU: return "oou";
    case PipageStrategy::kOES: return "oes";
  }
  return "?";
}

inline PipageStrategy parse_strategy(std::string_view s) {
  if (s == "oof") return PipageStrategy::kOOF;
  if (s == "oou") return PipageStrategy::kOOU;
  if (s == "oes") return PipageStrategy::kOES;
  throw InvalidInput("unknown pipage strategy: " + std::string(s));
}

// One recorded step. A pairwise step has var1/var2 set and a signed eps
// (x[var1] += eps, x[var2] -= eps); a single-entry rounding has var2 = -1 and
// eps = new value - old value; applying a precomputed unit rounding has
// slot = 0 and var1 = var2 = -1.
struct PipageStep {
  int unit = 0;
  int slot = 0;
  int var1 = -1;
  int var2 = -1;
  double eps = 0.0;
  double value = 0.0;      // objective after the step
  int fractional = 0;      // fractional entries left after the step
};

struct PipageTrace {
  double initial_value = 0.0;
  int initial_fractional = 0;
  std::vector<PipageStep> steps;

  void write_csv(std::ostream& os) const {
    os << "step,g,frac_count\n";
    os << "0," << initial_value << ',' << initial_fractional << '\n';
    for (std::size_t k = 0; k < steps.size(); ++k) {
      os << k + 1 << ',' << steps[k].value << ',' << steps[k].fractional << '\n';
    }
  }
};

struct PipageOptions {
  // Linear terms added to g (Lagrangian penalties), indexed by variable.
  std::vector<double> weights;
  // OES: number of re-ranking rounds before falling back to OOF; < 0 means
  // no limit.
  int oes_round_budget = -1;
  bool parallel = true;
};

struct PipageResult {
  Schedule schedule;      // canonical
  FractionalSolution x;   // integral point before canonicalization
  double value = 0.0;     // objective (g + linear terms) of x
  PipageTrace trace;
};

namespace detail {

class GroupRounder {
 public:
  GroupRounder(const Network& net, Variant variant) : variant_(variant) {
    const int units = variant == Variant::kOutbound ? net.num_fcs() : net.num_dss();
    groups_.resize(units);
    for (int u = 0; u < units; ++u) {
      for (int t = 1; t <= net.num_slots(); ++t) {
        std::vector<int> vars;
        if (variant == Variant::kOutbound) {
          for (int lane : net.lanes_from(u)) {
            if (t <= net.lane(lane).deadline) vars.push_back(net.var(lane, t));
          }
        } else {
          for (const Departure& d : net.arrivals().at(u, t)) vars.push_back(net.var(d.lane, d.slot));
        }
        if (!vars.empty()) groups_[u].push_back({t, std::move(vars)});
      }
    }
  }

  int num_units() const { return static_cast<int>(groups_.size()); }

  int unit_fractional(const FractionalObjective& obj, int u) const {
    int n = 0;
    for (const auto& g : groups_[u]) {
      for (int v : g.vars) n += is_fractional(obj.x(v));
    }
    return n;
  }

  std::vector<int> unit_vars(int u) const {
    std::vector<int> out;
    for (const auto& g : groups_[u]) out.insert(out.end(), g.vars.begin(), g.vars.end());
    return out;
  }

  // One pipage step on a group. Returns nullopt if the group is integral.
  static std::optional<PipageStep> step(FractionalObjective& obj, int u, int slot,
                                        const std::vector<int>& vars) {
    std::vector<int> frac;
    for (int v : vars) {
      if (is_fractional(obj.x(v))) frac.push_back(v);
    }
    if (frac.empty()) return std::nullopt;
    PipageStep s;
    s.unit = u;
    s.slot = slot;
    if (frac.size() == 1) {
      const int v = frac[0];
      const Change down[] = {{v, 0.0}};
      const Change up[] = {{v, 1.0}};
      const double d0 = obj.delta(down);
      const double d1 = obj.delta(up);
      const double target = d1 > d0 ? 1.0 : 0.0;
      s.var1 = v;
      s.eps = target - obj.x(v);
      const Change ch[] = {{v, target}};
      obj.apply(ch);
    } else {
      // Pair with the largest partial derivatives; g is affine in each
      // coordinate so the derivative is the difference of the endpoints.
      std::vector<std::pair<double, int>> grad;
      grad.reserve(frac.size());
      for (int v : frac) {
        const Change up[] = {{v, 1.0}};
        const Change down[] = {{v, 0.0}};
        grad.push_back({obj.delta(up) - obj.delta(down), v});
      }
      std::sort(grad.begin(), grad.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      const int v1 = grad[0].second;
      const int v2 = grad[1].second;
      const double x1 = obj.x(v1);
      const double x2 = obj.x(v2);
      const double eps_plus = std::min(1.0 - x1, x2);
      const double eps_minus = std::min(1.0 - x2, x1);
      auto snap = [](double v) {
        if (std::abs(v) <= kIntegralityTol) return 0.0;
        if (std::abs(v - 1.0) <= kIntegralityTol) return 1.0;
        return v;
      };
      const Change plus[] = {{v1, snap(x1 + eps_plus)}, {v2, snap(x2 - eps_plus)}};
      const Change minus[] = {{v1, snap(x1 - eps_minus)}, {v2, snap(x2 + eps_minus)}};
      const double dp = obj.delta(plus);
      const double dm = obj.delta(minus);
      s.var1 = v1;
      s.var2 = v2;
      if (dp >= dm) {
        s.eps = eps_plus;
        obj.apply(plus);
      } else {
        s.eps = -eps_minus;
        obj.apply(minus);
      }
    }
    s.value = obj.value();
    return s;
  }

  // Rounds every group of a unit; steps are appended when a sink is given.
  void round_unit(FractionalObjective& obj, int u, int& fractional,
                  std::vector<PipageStep>* sink) const {
    for (const auto& g : groups_[u]) {
      for (;;) {
        const int before = count(obj, g.vars);
        auto s = step(obj, u, g.slot, g.vars);
        if (!s) break;
        fractional -= before - count(obj, g.vars);
        s->fractional = fractional;
        if (sink) sink->push_back(*s);
      }
    }
  }

  void check_point(const Instance& inst, const FractionalObjective& obj) const {
    constexpr double kTol = 1e-7;
    for (int u = 0; u < num_units(); ++u) {
      const int cap = variant_ == Variant::kOutbound ? inst.ob_capacity[u] : inst.ib_capacity[u];
      for (const auto& g : groups_[u]) {
        double sum = 0.0;
        for (int v : g.vars) sum += obj.x(v);
        if (sum > cap + kTol) {
          throw InvalidInput("fractional point violates a capacity row of the rounding family");
        }
      }
    }
  }

 private:
  struct Group {
    int slot;
    std::vector<int> vars;
  };
  static int count(const FractionalObjective& obj, const std::vector<int>& vars) {
    int n = 0;
    for (int v : vars) n += is_fractional(obj.x(v));
    return n;
  }

  Variant variant_;
  std::vector<std::vector<Group>> groups_;
};

struct UnitRounding {
  int unit = 0;
  double gain = 0.0;
  std::vector<Change> changes;
};

// Rounds each listed unit against a frozen copy of obj.
inline std::vector<UnitRounding> round_units_independently(const GroupRounder& r,
                                                           const FractionalObjective& obj,
                                                           const std::vector<int>& units,
                                                           bool parallel) {
  std::vector<UnitRounding> out(units.size());
  auto work = [&](int k) {
    FractionalObjective copy = obj;
    int frac = 0;
    r.round_unit(copy, units[k], frac, nullptr);
    out[k].unit = units[k];
    out[k].gain = copy.value() - obj.value();
    for (int v : r.unit_vars(units[k])) {
      if (copy.x(v) != obj.x(v)) out[k].changes.push_back({v, copy.x(v)});
    }
  };
  parallel_for(static_cast<int>(units.size()), work, parallel ? worker_count() : 1);
  return out;
}

inline void rank_by_gain(std::vector<UnitRounding>& rs) {
  std::stable_sort(rs.begin(), rs.end(), [](const UnitRounding& a, const UnitRounding& b) {
    return a.gain != b.gain ? a.gain > b.gain : a.unit < b.unit;
  });
}

// Applies precomputed roundings in order; a rounding that would lower the
// objective at the current point is recomputed there instead.
inline void apply_in_order(const GroupRounder& r, FractionalObjective& obj,
                           const std::vector<UnitRounding>& ranked, int& fractional,
                           PipageTrace& trace) {
  for (const UnitRounding& ur : ranked) {
    const int before = r.unit_fractional(obj, ur.unit);
    if (before == 0) continue;
    std::vector<Change> undo;
    undo.reserve(ur.changes.size());
    for (const Change& c : ur.changes) undo.push_back({c.var, obj.x(c.var)});
    const double d = obj.apply(ur.changes);
    if (d < 0.0 || r.unit_fractional(obj, ur.unit) != 0) {
      obj.apply(undo);
      r.round_unit(obj, ur.unit, fractional, &trace.steps);
      continue;
    }
    fractional -= before;
    PipageStep s;
    s.unit = ur.unit;
    s.value = obj.value();
    s.fractional = fractional;
    trace.steps.push_back(s);
  }
}

}  // namespace detail

// Rounds x0 (feasible for the OB or IB capacity family) to an integral point
// whose objective g + <weights, x> is at least that of x0.
inline PipageResult pipage_round(const Problem& p, const FractionalSolution& x0, Variant variant,
                                 PipageStrategy strategy, const PipageOptions& opt = {}) {
  if (variant == Variant::kFull) {
    throw InvalidInput("pipage rounding needs a single capacity family (ob or ib)");
  }
  validate_point(p.network(), x0);
  const detail::GroupRounder rounder(p.network(), variant);
  FractionalObjective obj(p, x0, opt.weights);
  rounder.check_point(p.instance(), obj);

  PipageResult res;
  int fractional = count_fractional(x0.x);
  res.trace.initial_value = obj.value();
  res.trace.initial_fractional = fractional;

  std::vector<int> units;
  for (int u = 0; u < rounder.num_units(); ++u) {
    if (rounder.unit_fractional(obj, u) > 0) units.push_back(u);
  }
  auto ranked = detail::round_units_independently(rounder, obj, units, opt.parallel);
  detail::rank_by_gain(ranked);

  switch (strategy) {
    case PipageStrategy::kOOF:
      detail::apply_in_order(rounder, obj, ranked, fractional, res.trace);
      break;
    case PipageStrategy::kOOU:
      for (const auto& ur : ranked) rounder.round_unit(obj, ur.unit, fractional, &res.trace.steps);
      break;
    case PipageStrategy::kOES: {
      int rounds = 0;
      while (!ranked.empty()) {
        if (opt.oes_round_budget >= 0 && rounds >= opt.oes_round_budget) {
          detail::apply_in_order(rounder, obj, ranked, fractional, res.trace);
          break;
        }
        if (rounds > 0) {
          std::vector<int> left;
          for (const auto& ur : ranked) left.push_back(ur.unit);
          ranked = detail::round_units_independently(rounder, obj, left, opt.parallel);
          detail::rank_by_gain(ranked);
        }
        ++rounds;
        rounder.round_unit(obj, ranked.front().unit, fractional, &res.trace.steps);
        ranked.erase(ranked.begin());
      }
      break;
    }
  }
  if (fractional != 0 || count_fractional(obj.x()) != 0) {
    throw InternalError("pipage rounding left fractional entries");
  }
  res.x = FractionalSolution{obj.x()};
  res.value = obj.value();
  res.schedule = canonicalize(to_schedule(p.network(), res.x));
  return res;
}

// Single-group steps, exposed for tests and tracing.
inline std::optional<PipageStep> pipage_step_ob(FractionalObjective& obj, int fc, int slot) {
  const Network& net = obj.problem().network();
  std::vector<int> vars;
  for (int lane : net.lanes_from(fc)) {
    if (slot <= net.lane(lane).deadline) vars.push_back(net.var(lane, slot));
  }
  auto s = detail::GroupRounder::step(obj, fc, slot, vars);
  if (s) s->fractional = count_fractional(obj.x());
  return s;
}

inline std::optional<PipageStep> pipage_step_ib(FractionalObjective& obj, int ds,
                                                int arrival_slot) {
  const Network& net = obj.problem().network();
  std::vector<int> vars;
  for (const Departure& d : net.arrivals().at(ds, arrival_slot)) {
    vars.push_back(net.var(d.lane, d.slot));
  }
  auto s = detail::GroupRounder::step(obj, ds, arrival_slot, vars);
  if (s) s->fractional = count_fractional(obj.x());
  return s;
}

}  // namespace ndd
