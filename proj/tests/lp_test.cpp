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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ndd/ndd.hpp"
#include "support.hpp"

namespace ndd {
namespace {

using testing::rel_gap;

Instance with_caps(Instance inst, int ob, int ib) {
  return default_capacities(std::move(inst), ob, ib);
}

double penalty(const LpModel& m, const FractionalSolution& x) {
  double s = 0.0;
  for (int c = 0; c < m.num_x(); ++c) s += m.lp.cost(m.first_x_col + c) * x.x[m.x_var[c]];
  return s;
}

TEST(Lp, T1OutboundOptimum) {
  const Problem p(make_t1());
  const LpSolution s = solve_lp(build_ob_lp(p));
  EXPECT_EQ(s.status, lp::Status::kOptimal);
  EXPECT_NEAR(s.objective, 12.0, 1e-9);
  EXPECT_NEAR(eval_f(p, s.x), 12.0, 1e-9);
}

// The LP value is f at the returned point, dominates f on random feasible
// points, dominates the integer optimum, and the point respects capacities.
TEST(Lp, OptimumIsConsistentUpperBound) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 150; ++k) {
    const Problem p(testing::random_instance(7000 + k));
    for (Variant v : {Variant::kOutbound, Variant::kInbound, Variant::kFull}) {
      const LpSolution s = solve_lp(build_lp(p, v));
      ASSERT_EQ(s.status, lp::Status::kOptimal);
      const auto xm = testing::to_map(p.network(), s.x);
      EXPECT_NEAR(s.objective, testing::ref_f(p.instance(), xm), 1e-7);
      EXPECT_LE(testing::ref_capacity_overflow(p.instance(), xm, v), 1e-9);
      EXPECT_GE(s.objective + 1e-7, testing::reference_opt(p.instance(), v));
      for (int r = 0; r < 10; ++r) {
        const FractionalSolution y = testing::random_feasible_point(p, v, rng);
        EXPECT_GE(s.objective + 1e-7, eval_f(p, y));
      }
    }
  }
}

TEST(Lp, ZeroMultipliersGiveThePlainModel) {
  const Problem p(testing::random_instance(77));
  const Multipliers zero(p.instance().num_dss, p.instance().num_slots);
  const LpModel a = build_ob_lp(p);
  const LpModel b = build_ob_lp(p, &zero);
  ASSERT_EQ(a.lp.num_rows(), b.lp.num_rows());
  ASSERT_EQ(a.lp.num_cols(), b.lp.num_cols());
  for (int c = 0; c < a.lp.num_cols(); ++c) {
    EXPECT_EQ(a.lp.cost(c), b.lp.cost(c));
    EXPECT_TRUE(std::ranges::equal(a.lp.col_rows(c), b.lp.col_rows(c)));
  }
  EXPECT_EQ(b.outside_constant, 0.0);
  EXPECT_DOUBLE_EQ(solve_lp(a).objective, solve_lp(b).objective);

  const Multipliers mu0(p.instance().num_fcs, p.instance().num_slots);
  for (int j = 0; j < p.instance().num_dss; ++j) {
    EXPECT_DOUBLE_EQ(solve_lp(build_ib_lp_for_ds(p, j)).objective,
                     solve_lp(build_ib_lp_for_ds(p, j, &mu0)).objective);
  }
}

TEST(Lp, RejectsBadMultipliers) {
  const Problem p(make_t1());
  Multipliers m(1, 3);
  m.at(0, 2) = -1.0;
  EXPECT_THROW(build_ob_lp(p, &m), InvalidInput);
  Multipliers wrong(2, 3);
  EXPECT_THROW(build_ob_lp(p, &wrong), InvalidInput);
  EXPECT_THROW(build_ib_lp_for_ds(p, 1), InvalidInput);
}

// With multipliers the objective at the returned point is f plus the linear
// penalty, and the constant of the relaxed rows sits outside the LP.
TEST(Lp, PenalizedObjective) {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 60; ++k) {
    const Problem p(testing::random_instance(7500 + k));
    const Instance& inst = p.instance();
    Multipliers lambda(inst.num_dss, inst.num_slots);
    double constant = 0.0;
    for (int j = 0; j < inst.num_dss; ++j) {
      for (int t = 1; t <= inst.num_slots; ++t) {
        lambda.at(j, t) = std::uniform_real_distribution<double>(0.0, 4.0)(rng);
        constant += lambda.at(j, t) * inst.ib_capacity[j];
      }
    }
    const LpModel m = build_ob_lp(p, &lambda);
    EXPECT_NEAR(m.outside_constant, constant, 1e-12);
    const LpSolution s = solve_lp(m);
    EXPECT_NEAR(s.objective, eval_f(p, s.x) + penalty(m, s.x), 1e-7);
    // the penalty of each variable is minus the multiplier at its arrival
    for (int c = 0; c < m.num_x(); ++c) {
      const int v = m.x_var[c];
      const int lane = p.network().var_lane(v);
      const int tau = p.network().arrival_slot(lane, p.network().var_slot(v));
      EXPECT_DOUBLE_EQ(m.lp.cost(m.first_x_col + c), -lambda.at(p.network().lane(lane).ds, tau));
    }
  }
}

TEST(Lp, InboundDecouplesPerDs) {
  for (int k = 0; k < 50; ++k) {
    const Problem p(testing::random_instance(8000 + k));
    double sum = 0.0;
    for (int j = 0; j < p.instance().num_dss; ++j) {
      const LpModel m = build_ib_lp_for_ds(p, j);
      if (p.network().lanes_into(j).empty()) EXPECT_EQ(m.num_x(), 0);
      sum += solve_lp(m).objective;
    }
    const double mono = solve_lp(build_ib_lp(p)).objective;
    EXPECT_LE(rel_gap(sum, mono), 1e-6);
  }
}

TEST(Lp, DsWithoutLanesHasZeroOptimum) {
  Instance inst = Instance::empty(1, 2, 1, 2);
  inst.set_transit(0, 0, 0.0);
  inst.set_stock(0, 0);
  inst.add_demand(1, 0, 1, 5.0);
  inst.normalize_demand();
  const Problem p(inst);
  const LpModel m = build_ib_lp_for_ds(p, 1);
  EXPECT_EQ(m.num_x(), 0);
  EXPECT_EQ(solve_lp(m).objective, 0.0);
}

TEST(Lp, UnconstrainedRegimeCoversEverything) {
  for (int k = 0; k < 40; ++k) {
    const Problem p(with_caps(testing::random_instance(8500 + k), 50, 50));
    Schedule all_at_deadline;
    for (const Lane& l : p.network().lanes()) all_at_deadline.insert({l.fc, l.ds, l.deadline});
    const double coverable = testing::ref_g(p.instance(), all_at_deadline);
    for (Variant v : {Variant::kOutbound, Variant::kInbound, Variant::kFull}) {
      EXPECT_NEAR(solve_lp(build_lp(p, v)).objective, coverable, 1e-7);
    }
  }
}

TEST(Lp, ScaledObjectiveScalesOptimum) {
  const Problem p(testing::random_instance(99));
  LpModel m = build_lp(p, Variant::kFull);
  const LpSolution a = solve_lp(m);
  m.lp.scale_objective(2.0);
  const LpSolution b = solve_lp(m);
  EXPECT_NEAR(b.objective, 2.0 * a.objective, 1e-9 * std::max(1.0, a.objective));
  EXPECT_NEAR(eval_f(p, b.x), a.objective, 1e-7);
}

TEST(Lp, GeneratedInstanceMatchesBoundChain) {
  GeneratorConfig cfg;
  cfg.seed = 5;
  cfg.num_fcs = 3;
  cfg.num_categories = 8;
  const Problem p(generate(cfg).instance);
  const LpSolution s = solve_lp(build_ob_lp(p));
  ASSERT_EQ(s.status, lp::Status::kOptimal);
  EXPECT_LE(testing::ref_capacity_overflow(p.instance(), testing::to_map(p.network(), s.x),
                                           Variant::kOutbound), 1e-9);
  EXPECT_GE(s.objective + 1e-6, eval_g(p, greedy_solve(p, Variant::kOutbound)));
  EXPECT_LE(s.objective, p.instance().total_demand() + 1e-6);
}

TEST(Lp, TimeLimitReturnsFeasiblePoint) {
  GeneratorConfig cfg;
  cfg.seed = 2;
  cfg.num_fcs = 4;
  cfg.num_categories = 20;
  const Problem p(generate(cfg).instance);
  LpOptions opt;
  opt.time_limit_s = 0.0;
  const LpSolution s = solve_lp(build_ob_lp(p), opt);
  EXPECT_EQ(s.status, lp::Status::kTimeLimit);
  EXPECT_LE(testing::ref_capacity_overflow(p.instance(), testing::to_map(p.network(), s.x),
                                           Variant::kOutbound), 1e-9);
}

TEST(Lp, LpFormatExport) {
  const Problem p(make_t1());
  const LpModel m = build_ob_lp(p);
  std::ostringstream os;
  write_lp_format(m, p.network(), os);
  const std::string text = os.str();
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("Subject To"), std::string::npos);
  EXPECT_NE(text.find("x_1_1_2"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

}  // namespace
}  // namespace ndd
