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

// Linear surrogate models
//
//   max  sum d * y  + sum w * x
//   s.t. y_{g,t} <= sum_{lane in g, tau >= t} x_{lane,tau}
//        capacity rows of the chosen variant
//        0 <= x, y <= 1
//
// where g ranges over groups of (ds, product) cells that share one DS and the
// same set of covering lanes (their demand is summed, which is exact for the
// clamped-sum objective f). Penalty weights w come from Lagrange multipliers;
// the matching constant is kept outside the LP.

#pragma once

#include <iomanip>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "ndd/errors.hpp"
#include "ndd/model.hpp"
#include "ndd/objective.hpp"
#include "ndd/simplex.hpp"

namespace ndd {

// Nonnegative multipliers indexed by (node, slot), slots 1-based.
class Multipliers {
 public:
  Multipliers() = default;
  Multipliers(int num_nodes, int num_slots)
      : num_nodes_(num_nodes), num_slots_(num_slots),
        values_(static_cast<std::size_t>(num_nodes) * num_slots, 0.0) {}

  int num_nodes() const { return num_nodes_; }
  int num_slots() const { return num_slots_; }
  bool empty() const { return values_.empty(); }
  double at(int node, int slot) const { return values_[index(node, slot)]; }
  double& at(int node, int slot) { return values_[index(node, slot)]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  void validate() const {
    for (double v : values_) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput("multipliers must be finite and >= 0");
    }
  }

 private:
  std::size_t index(int node, int slot) const {
    return static_cast<std::size_t>(node) * num_slots_ + (slot - 1);
  }
  int num_nodes_ = 0;
  int num_slots_ = 0;
  std::vector<double> values_;
};

struct LpModel {
  lp::LinearProgram lp;
  Variant variant = Variant::kOutbound;
  int ds = -1;              // restricted to lanes into this DS, or -1
  int num_network_vars = 0;
  int first_x_col = 0;      // x columns are [first_x_col, first_x_col + x_var.size())
  std::vector<int> x_var;   // x column -> network variable
  std::vector<int> y_row;   // y column (0..) -> its coverage row
  double outside_constant = 0.0;  // Lagrangian constant, not part of lp

  int num_x() const { return static_cast<int>(x_var.size()); }
  int num_y() const { return static_cast<int>(y_row.size()); }
};

struct LpOptions {
  double time_limit_s = lp::kInf;
  const lp::Basis* warm_start = nullptr;
};

struct LpSolution {
  lp::Status status = lp::Status::kOptimal;
  double objective = 0.0;  // LP objective (outside constant excluded)
  FractionalSolution x;    // over all network variables
  std::vector<double> values;
  lp::Basis basis;
  long long iterations = 0;
};

namespace detail {

struct ModelSpec {
  Variant variant = Variant::kOutbound;
  int only_ds = -1;
  const Multipliers* ob_duals = nullptr;  // over (fc, slot)
  const Multipliers* ib_duals = nullptr;  // over (ds, arrival slot)
};

inline void check_duals(const Multipliers* m, int nodes, int slots) {
  if (!m || m->empty()) return;
  if (m->num_nodes() != nodes || m->num_slots() != slots) {
    throw InvalidInput("multiplier dimensions do not match the instance");
  }
  m->validate();
}

inline LpModel build_model(const Problem& p, const ModelSpec& spec) {
  const Instance& inst = p.instance();
  const Network& net = p.network();
  const CoverageIndex& cov = p.coverage();
  const int T = inst.num_slots;
  check_duals(spec.ob_duals, inst.num_fcs, T);
  check_duals(spec.ib_duals, inst.num_dss, T);

  LpModel m;
  m.variant = spec.variant;
  m.ds = spec.only_ds;
  m.num_network_vars = net.num_vars();

  // Network variables in the model.
  std::vector<int> col_of_var(net.num_vars(), -1);
  auto in_scope = [&](int lane) { return spec.only_ds < 0 || net.lane(lane).ds == spec.only_ds; };
  for (int lane = 0; lane < static_cast<int>(net.lanes().size()); ++lane) {
    if (!in_scope(lane)) continue;
    for (int t = 1; t <= net.lane(lane).deadline; ++t) {
      col_of_var[net.var(lane, t)] = m.num_x();
      m.x_var.push_back(net.var(lane, t));
    }
  }
  std::vector<std::vector<std::pair<int, double>>> x_entries(m.x_var.size());

  // Coverage rows and y columns.
  struct YCol {
    int row;
    double demand;
  };
  std::vector<YCol> ycols;
  const int ds_lo = spec.only_ds < 0 ? 0 : spec.only_ds;
  const int ds_hi = spec.only_ds < 0 ? inst.num_dss : spec.only_ds + 1;
  for (int j = ds_lo; j < ds_hi; ++j) {
    std::map<std::vector<int>, std::vector<double>> groups;
    const auto [cb, ce] = cov.ds_cells(j);
    for (int c = cb; c < ce; ++c) {
      const DemandCell& cell = cov.cell(c);
      if (cell.covering_lanes.empty()) continue;
      auto& d = groups[cell.covering_lanes];
      d.resize(T + 1, 0.0);
      for (int t = cell.first_slot; t <= T; ++t) d[t] += cell.demand_at(t);
    }
    for (const auto& [lanes, demand] : groups) {
      int reach = 0;
      for (int lane : lanes) reach = std::max(reach, net.lane(lane).deadline);
      for (int t = 1; t <= std::min(T, reach); ++t) {
        if (demand[t] <= 0.0) continue;
        const int row = m.lp.add_row(0.0);
        ycols.push_back({row, demand[t]});
        for (int lane : lanes) {
          for (int tau = t; tau <= net.lane(lane).deadline; ++tau) {
            x_entries[col_of_var[net.var(lane, tau)]].push_back({row, -1.0});
          }
        }
      }
    }
  }

  // Capacity rows that can bind.
  if (enforces_outbound(spec.variant)) {
    for (int i = 0; i < inst.num_fcs; ++i) {
      for (int t = 1; t <= T; ++t) {
        std::vector<int> cols;
        for (int lane : net.lanes_from(i)) {
          if (in_scope(lane) && t <= net.lane(lane).deadline) {
            cols.push_back(col_of_var[net.var(lane, t)]);
          }
        }
        if (static_cast<int>(cols.size()) <= inst.ob_capacity[i]) continue;
        const int row = m.lp.add_row(inst.ob_capacity[i]);
        for (int c : cols) x_entries[c].push_back({row, 1.0});
      }
    }
  }
  if (enforces_inbound(spec.variant)) {
    for (int j = ds_lo; j < ds_hi; ++j) {
      for (int tau = 1; tau <= T; ++tau) {
        const auto deps = net.arrivals().at(j, tau);
        if (static_cast<int>(deps.size()) <= inst.ib_capacity[j]) continue;
        const int row = m.lp.add_row(inst.ib_capacity[j]);
        for (const Departure& d : deps) {
          x_entries[col_of_var[net.var(d.lane, d.slot)]].push_back({row, 1.0});
        }
      }
    }
  }

  for (const YCol& y : ycols) {
    const int r[] = {y.row};
    const double v[] = {1.0};
    m.lp.add_col(y.demand, 0.0, 1.0, r, v);
    m.y_row.push_back(y.row);
  }
  m.first_x_col = m.lp.num_cols();
  std::vector<int> rows;
  std::vector<double> vals;
  for (int c = 0; c < m.num_x(); ++c) {
    const int v = m.x_var[c];
    const int lane = net.var_lane(v);
    const int t = net.var_slot(v);
    double w = 0.0;
    if (spec.ob_duals && !spec.ob_duals->empty()) w -= spec.ob_duals->at(net.lane(lane).fc, t);
    if (spec.ib_duals && !spec.ib_duals->empty()) {
      w -= spec.ib_duals->at(net.lane(lane).ds, net.arrival_slot(lane, t));
    }
    rows.clear();
    vals.clear();
    for (const auto& [r, a] : x_entries[c]) {
      rows.push_back(r);
      vals.push_back(a);
    }
    m.lp.add_col(w, 0.0, 1.0, rows, vals);
  }

  // Constant of the relaxed rows; per-DS models leave it to the caller.
  if (spec.only_ds < 0) {
    if (spec.ib_duals && !spec.ib_duals->empty()) {
      for (int j = 0; j < inst.num_dss; ++j) {
        for (int tau = 1; tau <= T; ++tau) {
          m.outside_constant += spec.ib_duals->at(j, tau) * inst.ib_capacity[j];
        }
      }
    }
    if (spec.ob_duals && !spec.ob_duals->empty()) {
      for (int i = 0; i < inst.num_fcs; ++i) {
        for (int t = 1; t <= T; ++t) {
          m.outside_constant += spec.ob_duals->at(i, t) * inst.ob_capacity[i];
        }
      }
    }
  }
  return m;
}

}  // namespace detail

// OB capacity rows only; lambda over (ds, arrival slot) penalizes inbound use.
inline LpModel build_ob_lp(const Problem& p, const Multipliers* lambda = nullptr) {
  return detail::build_model(p, {Variant::kOutbound, -1, nullptr, lambda});
}

// IB rows for one DS over the lanes into it; mu over (fc, slot).
inline LpModel build_ib_lp_for_ds(const Problem& p, int ds, const Multipliers* mu = nullptr) {
  if (ds < 0 || ds >= p.instance().num_dss) throw InvalidInput("DS index out of range");
  return detail::build_model(p, {Variant::kInbound, ds, mu, nullptr});
}

// Monolithic IB model (all DSs at once).
inline LpModel build_ib_lp(const Problem& p, const Multipliers* mu = nullptr) {
  return detail::build_model(p, {Variant::kInbound, -1, mu, nullptr});
}

inline LpModel build_lp(const Problem& p, Variant v) {
  return detail::build_model(p, {v, -1, nullptr, nullptr});
}

// Objective of the model at given column values, with every y column raised
// to the largest value its coverage row allows.
inline double completed_objective(const LpModel& m, std::vector<double>& values) {
  std::vector<double> act(m.lp.num_rows(), 0.0);
  for (int c = m.first_x_col; c < m.lp.num_cols(); ++c) {
    if (values[c] == 0.0) continue;
    const auto rows = m.lp.col_rows(c);
    const auto vals = m.lp.col_vals(c);
    for (std::size_t k = 0; k < rows.size(); ++k) act[rows[k]] += vals[k] * values[c];
  }
  for (int y = 0; y < m.num_y(); ++y) values[y] = std::clamp(-act[m.y_row[y]], 0.0, 1.0);
  return m.lp.objective_at(values);
}

inline LpSolution solve_lp(const LpModel& m, const LpOptions& opt = {}) {
  lp::SimplexOptions so;
  so.time_limit_s = opt.time_limit_s;
  so.warm_start = opt.warm_start;
  lp::SimplexResult r = lp::solve(m.lp, so);
  if (r.status == lp::Status::kUnbounded) throw InternalError("bounded LP reported unbounded");
  LpSolution out;
  out.status = r.status;
  out.objective = r.objective;
  out.iterations = r.iterations;
  out.basis = std::move(r.basis);
  out.x = FractionalSolution{std::vector<double>(m.num_network_vars, 0.0)};
  for (int c = 0; c < m.num_x(); ++c) {
    double v = r.x[m.first_x_col + c];
    if (std::abs(v) <= kIntegralityTol) v = 0.0;
    if (std::abs(v - 1.0) <= kIntegralityTol) v = 1.0;
    out.x.x[m.x_var[c]] = v;
  }
  out.values = std::move(r.x);
  return out;
}

// CPLEX LP text format, for cross-checking with external solvers.
inline void write_lp_format(const LpModel& m, const Network& net, std::ostream& os) {
  auto name = [&](int c) {
    if (c < m.first_x_col) return "y" + std::to_string(c);
    const Truck t = net.var_truck(m.x_var[c - m.first_x_col]);
    return "x_" + std::to_string(t.fc + 1) + "_" + std::to_string(t.ds + 1) + "_" +
           std::to_string(t.slot);
  };
  auto term = [&](double a, const std::string& v) {
    os << (a < 0 ? " - " : " + ") << std::abs(a) << ' ' << v;
  };
  os << std::setprecision(17);
  os << "\\ constant " << m.lp.constant() + m.outside_constant << "\nMaximize\n obj:";
  for (int c = 0; c < m.lp.num_cols(); ++c) {
    if (m.lp.cost(c) != 0.0) term(m.lp.cost(c), name(c));
  }
  os << "\nSubject To\n";
  std::vector<std::vector<std::pair<int, double>>> rows(m.lp.num_rows());
  for (int c = 0; c < m.lp.num_cols(); ++c) {
    const auto rs = m.lp.col_rows(c);
    const auto vs = m.lp.col_vals(c);
    for (std::size_t k = 0; k < rs.size(); ++k) rows[rs[k]].push_back({c, vs[k]});
  }
  for (int r = 0; r < m.lp.num_rows(); ++r) {
    os << " r" << r << ':';
    for (const auto& [c, a] : rows[r]) term(a, name(c));
    os << " <= " << m.lp.rhs(r) << '\n';
  }
  os << "Bounds\n";
  for (int c = 0; c < m.lp.num_cols(); ++c) {
    os << ' ' << m.lp.lower(c) << " <= " << name(c) << " <= " << m.lp.upper(c) << '\n';
  }
  os << "End\n";
}

}  // namespace ndd
