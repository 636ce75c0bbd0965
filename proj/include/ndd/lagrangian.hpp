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

// Projected subgradient loops on the Lagrangian dual of the full problem.
// One capacity family is moved into the objective with multipliers; the
// other stays as constraints of an easier relaxed problem that is solved,
// made integral, repaired to full feasibility and used for a Polyak step.

#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "ndd/errors.hpp"
#include "ndd/greedy.hpp"
#include "ndd/ilp.hpp"
#include "ndd/lp.hpp"
#include "ndd/model.hpp"
#include "ndd/objective.hpp"
#include "ndd/parallel.hpp"
#include "ndd/pipage.hpp"

namespace ndd {

enum class LagrangianMethod { kIbRelaxPipage, kObRelaxPipage, kObRelaxIlp };

inline std::string_view to_string(LagrangianMethod m) {
  switch (m) {
    case LagrangianMethod::kIbRelaxPipage: return "lag-ib-pipage";
    case LagrangianMethod::kObRelaxPipage: return "lag-ob-pipage";
    case LagrangianMethod::kObRelaxIlp: return "lag-ob-ilp";
  }
  return "?";
}

struct StepSize {
  double alpha = 0.0;
  bool feasible_subgradient = false;  // zero violation: no dual move
};

// alpha = (g_L - g_feas) / |v|^2.
inline StepSize polyak_step(double g_lagrangian, double g_feasible, double norm2) {
  const double tol = 1e-6 * std::max(1.0, std::abs(g_feasible));
  if (g_lagrangian < g_feasible - tol) {
    throw InternalError("dual value below a feasible primal value");
  }
  if (norm2 <= 0.0) return {0.0, true};
  return {std::max(0.0, g_lagrangian - g_feasible) / norm2, false};
}

struct LagrangianOptions {
  int max_iterations = 100;
  int patience = 20;
  double time_limit_s = lp::kInf;
  PipageStrategy strategy = PipageStrategy::kOOU;
  // Use the best feasible value so far instead of the current iteration's in
  // the Polyak numerator.
  bool best_so_far_lower_bound = false;
  bool parallel = true;
};

struct LagrangianIteration {
  int iteration = 0;
  double g_lagrangian = 0.0;
  double g_feasible = 0.0;
  double norm2 = 0.0;
  double alpha = 0.0;
  double incumbent = 0.0;
  double wall_ms = 0.0;
};

struct DualState {
  Multipliers multipliers;  // lambda over (ds, slot) or mu over (fc, slot)
  int iteration = 0;
  Schedule incumbent;
  double incumbent_value = 0.0;
  std::vector<LagrangianIteration> trace;

  void write_csv(std::ostream& os) const {
    os << "iteration,g_L,g_feas,norm2,alpha,incumbent_g,wall_ms\n";
    for (const auto& r : trace) {
      os << r.iteration << ',' << r.g_lagrangian << ',' << r.g_feasible << ',' << r.norm2 << ','
         << r.alpha << ',' << r.incumbent << ',' << r.wall_ms << '\n';
    }
  }
};

struct LagrangianResult {
  Schedule schedule;  // FULL-feasible incumbent
  double value = 0.0;
  DualState state;
  bool converged = false;     // integral relaxed solution was already feasible
  bool time_limited = false;
};

namespace detail {

// Slack c - usage per (node, slot) of the relaxed family.
inline Multipliers relaxed_slack(const Problem& p, const Schedule& s, bool inbound) {
  const Instance& inst = p.instance();
  const Network& net = p.network();
  Multipliers slack(inbound ? inst.num_dss : inst.num_fcs, inst.num_slots);
  for (int n = 0; n < slack.num_nodes(); ++n) {
    const int cap = inbound ? inst.ib_capacity[n] : inst.ob_capacity[n];
    for (int t = 1; t <= inst.num_slots; ++t) slack.at(n, t) = cap;
  }
  for (const Truck& t : s) {
    if (inbound) {
      slack.at(t.ds, net.arrival_slot(net.lane_id(t.fc, t.ds), t.slot)) -= 1.0;
    } else {
      slack.at(t.fc, t.slot) -= 1.0;
    }
  }
  return slack;
}

// g(S) + sum multipliers * slack.
inline double lagrangian_value(const Problem& p, const Schedule& s, const Multipliers& m,
                               bool inbound) {
  const Multipliers slack = relaxed_slack(p, s, inbound);
  double v = eval_g(p, s);
  for (std::size_t k = 0; k < slack.values().size(); ++k) {
    v += m.values()[k] * slack.values()[k];
  }
  return v;
}

inline std::vector<double> penalty_weights(const Problem& p, const Multipliers& m, bool inbound) {
  const Network& net = p.network();
  std::vector<double> w(net.num_vars(), 0.0);
  for (int v = 0; v < net.num_vars(); ++v) {
    const int lane = net.var_lane(v);
    const int t = net.var_slot(v);
    const Lane& l = net.lane(lane);
    w[v] = inbound ? -m.at(l.ds, net.arrival_slot(lane, t)) : -m.at(l.fc, t);
  }
  return w;
}

}  // namespace detail

inline LagrangianResult solve_lagrangian(const Problem& p, LagrangianMethod method,
                                         const LagrangianOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  const Instance& inst = p.instance();
  const bool relax_inbound = method == LagrangianMethod::kIbRelaxPipage;
  const int num_dss = inst.num_dss;

  LagrangianResult res;
  DualState& st = res.state;
  st.multipliers = Multipliers(relax_inbound ? inst.num_dss : inst.num_fcs, inst.num_slots);
  st.incumbent = Schedule{};
  st.incumbent_value = 0.0;

  std::optional<lp::Basis> ob_basis;
  std::vector<std::optional<lp::Basis>> ds_basis(num_dss);
  int since_improvement = 0;

  for (int it = 1; it <= opt.max_iterations; ++it) {
    const double remaining = opt.time_limit_s - elapsed();
    if (remaining <= 0.0) {
      res.time_limited = true;
      break;
    }
    st.iteration = it;
    const Multipliers& mult = st.multipliers;

    // (1) relaxed problem, made integral
    Schedule relaxed;
    bool partial = false;
    if (relax_inbound) {
      const LpModel model = build_ob_lp(p, &mult);
      LpOptions lo;
      lo.time_limit_s = remaining;
      lo.warm_start = ob_basis ? &*ob_basis : nullptr;
      LpSolution sol = solve_lp(model, lo);
      partial = sol.status != lp::Status::kOptimal;
      ob_basis = std::move(sol.basis);
      PipageOptions po;
      po.weights = detail::penalty_weights(p, mult, true);
      po.parallel = opt.parallel;
      relaxed = pipage_round(p, sol.x, Variant::kOutbound, opt.strategy, po).schedule;
    } else {
      FractionalSolution x = FractionalSolution::zeros(p.network());
      std::vector<char> ds_partial(num_dss, 0);
      auto solve_ds = [&](int j) {
        const LpModel model = build_ib_lp_for_ds(p, j, &mult);
        if (method == LagrangianMethod::kObRelaxIlp) {
          IlpOptions io;
          io.time_limit_s = remaining;
          const IlpResult r = solve_ilp(model, io);
          ds_partial[j] = r.status != lp::Status::kOptimal;
          for (int c = 0; c < model.num_x(); ++c) x.x[model.x_var[c]] = r.x.x[model.x_var[c]];
        } else {
          LpOptions lo;
          lo.time_limit_s = remaining;
          lo.warm_start = ds_basis[j] ? &*ds_basis[j] : nullptr;
          LpSolution sol = solve_lp(model, lo);
          ds_partial[j] = sol.status != lp::Status::kOptimal;
          ds_basis[j] = std::move(sol.basis);
          for (int c = 0; c < model.num_x(); ++c) x.x[model.x_var[c]] = sol.x.x[model.x_var[c]];
        }
      };
      parallel_for(num_dss, solve_ds, opt.parallel ? worker_count() : 1);
      for (char c : ds_partial) partial = partial || c;
      if (method == LagrangianMethod::kObRelaxIlp) {
        relaxed = canonicalize(to_schedule(p.network(), x));
      } else {
        PipageOptions po;
        po.weights = detail::penalty_weights(p, mult, false);
        po.parallel = opt.parallel;
        relaxed = pipage_round(p, x, Variant::kInbound, opt.strategy, po).schedule;
      }
    }
    if (partial) res.time_limited = true;

    // (2) repair and the dual value of this iteration
    const Multipliers slack = detail::relaxed_slack(p, relaxed, relax_inbound);
    bool violated = false;
    for (double s : slack.values()) violated = violated || s < 0.0;
    const Schedule repaired = violated ? greedy_feasibility(p, relaxed) : relaxed;
    const double g_feas = eval_g(p, repaired);
    const double g_lagr =
        std::max(detail::lagrangian_value(p, relaxed, mult, relax_inbound),
                 detail::lagrangian_value(p, repaired, mult, relax_inbound));

    bool improved = false;
    if (g_feas > st.incumbent_value + 1e-9) {
      st.incumbent = repaired;
      st.incumbent_value = g_feas;
      improved = true;
    }

    // (3) projected Polyak step
    LagrangianIteration rec;
    rec.iteration = it;
    rec.g_lagrangian = g_lagr;
    rec.g_feasible = g_feas;
    if (violated) {
      std::vector<double> v(slack.values().begin(), slack.values().end());
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (mult.values()[k] <= 0.0 && v[k] > 0.0) v[k] = 0.0;
      }
      double norm2 = 0.0;
      for (double c : v) norm2 += c * c;
      const double lower = opt.best_so_far_lower_bound ? st.incumbent_value : g_feas;
      const StepSize step = g_lagr >= lower ? polyak_step(g_lagr, lower, norm2) : StepSize{};
      rec.norm2 = norm2;
      rec.alpha = step.alpha;
      auto values = st.multipliers.values();
      for (std::size_t k = 0; k < v.size(); ++k) {
        values[k] = std::max(0.0, values[k] - step.alpha * v[k]);
      }
    }
    rec.incumbent = st.incumbent_value;
    rec.wall_ms = 1e3 * elapsed();
    st.trace.push_back(rec);

    if (!violated) {
      // Held multipliers would reproduce this iteration.
      res.converged = true;
      break;
    }
    since_improvement = improved ? 0 : since_improvement + 1;
    if (since_improvement >= opt.patience) break;
    if (partial) break;
  }
  res.schedule = st.incumbent;
  res.value = st.incumbent_value;
  return res;
}

}  // namespace ndd
