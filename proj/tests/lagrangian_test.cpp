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

#include <sstream>

#include "ndd/ndd.hpp"
#include "support.hpp"

namespace ndd {
namespace {

constexpr LagrangianMethod kMethods[] = {LagrangianMethod::kIbRelaxPipage,
                                         LagrangianMethod::kObRelaxPipage,
                                         LagrangianMethod::kObRelaxIlp};

TEST(Polyak, Examples) {
  const StepSize a = polyak_step(100.0, 90.0, 4.0);
  EXPECT_DOUBLE_EQ(a.alpha, 2.5);
  EXPECT_FALSE(a.feasible_subgradient);
  EXPECT_DOUBLE_EQ(polyak_step(50.0, 50.0, 3.0).alpha, 0.0);
  const StepSize z = polyak_step(70.0, 60.0, 0.0);
  EXPECT_TRUE(z.feasible_subgradient);
  EXPECT_DOUBLE_EQ(z.alpha, 0.0);
  EXPECT_THROW(polyak_step(80.0, 90.0, 1.0), InternalError);
  EXPECT_NO_THROW(polyak_step(90.0 - 1e-7, 90.0, 1.0));
}

TEST(Lagrangian, MethodNames) {
  EXPECT_EQ(to_string(LagrangianMethod::kIbRelaxPipage), "lag-ib-pipage");
  EXPECT_EQ(to_string(LagrangianMethod::kObRelaxPipage), "lag-ob-pipage");
  EXPECT_EQ(to_string(LagrangianMethod::kObRelaxIlp), "lag-ob-ilp");
}

TEST(Lagrangian, NonBindingConstraintsConvergeImmediately) {
  for (int k = 0; k < 30; ++k) {
    const Problem p(default_capacities(testing::random_instance(40000 + k), 50, 50));
    Schedule every;
    for (const Lane& l : p.network().lanes()) every.insert({l.fc, l.ds, l.deadline});
    const double coverable = eval_g(p, every);
    for (LagrangianMethod m : kMethods) {
      const LagrangianResult r = solve_lagrangian(p, m);
      EXPECT_TRUE(r.converged);
      EXPECT_EQ(r.state.trace.size(), 1u);
      for (double v : r.state.multipliers.values()) EXPECT_EQ(v, 0.0);
      EXPECT_DOUBLE_EQ(r.value, coverable);
    }
  }
}

TEST(Lagrangian, T1ReachesFullOptimum) {
  const Problem p(make_t1());
  const double opt = solve_exact(p, Variant::kFull).value;
  ASSERT_DOUBLE_EQ(opt, 9.0);
  for (LagrangianMethod m : kMethods) {
    const LagrangianResult r = solve_lagrangian(p, m);
    EXPECT_TRUE(is_feasible(r.schedule, p.instance(), Variant::kFull));
    EXPECT_DOUBLE_EQ(eval_g(p, r.schedule), opt) << to_string(m);
  }
}

// Feasibility, weak duality, incumbent monotonicity and the stopping rule on
// a suite of tiny FULL instances.
TEST(Lagrangian, SuiteProperties) {
  for (int k = 0; k < 100; ++k) {
    const Problem p(testing::random_instance(41000 + k));
    const double opt = testing::reference_opt(p.instance(), Variant::kFull);
    for (LagrangianMethod m : kMethods) {
      LagrangianOptions opt_l;
      const LagrangianResult r = solve_lagrangian(p, m, opt_l);
      EXPECT_TRUE(testing::ref_feasible(p.instance(), r.schedule, Variant::kFull));
      EXPECT_DOUBLE_EQ(r.value, testing::ref_g(p.instance(), r.schedule));
      EXPECT_LE(r.value, opt + 1e-9);
      const auto& tr = r.state.trace;
      ASSERT_FALSE(tr.empty());
      EXPECT_LE(static_cast<int>(tr.size()), opt_l.max_iterations);
      double prev = 0.0;
      for (const LagrangianIteration& it : tr) {
        EXPECT_GE(it.g_lagrangian, it.g_feasible - 1e-6);
        EXPECT_GE(it.incumbent, prev);
        EXPECT_GE(it.alpha, 0.0);
        prev = it.incumbent;
      }
      EXPECT_DOUBLE_EQ(tr.back().incumbent, r.value);
      for (double v : r.state.multipliers.values()) EXPECT_GE(v, 0.0);
      if (!r.converged && static_cast<int>(tr.size()) < opt_l.max_iterations) {
        // stopped by patience: the last iterations brought no improvement
        const std::size_t n = tr.size();
        ASSERT_GT(n, static_cast<std::size_t>(opt_l.patience));
        EXPECT_DOUBLE_EQ(tr[n - 1].incumbent, tr[n - 1 - opt_l.patience].incumbent);
      }
    }
  }
}

TEST(Lagrangian, MultipliersStayNonnegativeEveryIteration) {
  for (int k = 0; k < 10; ++k) {
    const Problem p(testing::random_instance(42000 + k));
    for (LagrangianMethod m : kMethods) {
      for (int n = 1; n <= 8; ++n) {
        LagrangianOptions o;
        o.max_iterations = n;
        const LagrangianResult r = solve_lagrangian(p, m, o);
        for (double v : r.state.multipliers.values()) EXPECT_GE(v, 0.0);
      }
    }
  }
}

TEST(Lagrangian, BestMethodBeatsGreedyOnAverage) {
  double greedy = 0.0;
  double best[3] = {0.0, 0.0, 0.0};
  for (int k = 0; k < 100; ++k) {
    const Problem p(testing::random_instance(43000 + k));
    greedy += eval_g(p, greedy_solve(p, Variant::kFull));
    for (int m = 0; m < 3; ++m) best[m] += solve_lagrangian(p, kMethods[m]).value;
  }
  EXPECT_GE(std::max({best[0], best[1], best[2]}), greedy);
}

TEST(Lagrangian, BestSoFarFlagStopsStepsBelowIncumbent) {
  for (int k = 0; k < 40; ++k) {
    const Problem p(testing::random_instance(44000 + k));
    LagrangianOptions o;
    o.best_so_far_lower_bound = true;
    for (LagrangianMethod m : kMethods) {
      const LagrangianResult r = solve_lagrangian(p, m, o);
      EXPECT_TRUE(is_feasible(r.schedule, p.instance(), Variant::kFull));
      for (const LagrangianIteration& it : r.state.trace) {
        if (it.g_lagrangian < it.incumbent) EXPECT_EQ(it.alpha, 0.0);
      }
    }
  }
}

TEST(Lagrangian, TimeLimitReturnsIncumbent) {
  const Problem p(make_t1());
  LagrangianOptions o;
  o.time_limit_s = 0.0;
  const LagrangianResult r = solve_lagrangian(p, LagrangianMethod::kIbRelaxPipage, o);
  EXPECT_TRUE(r.time_limited);
  EXPECT_TRUE(r.schedule.empty());
  EXPECT_TRUE(r.state.trace.empty());
}

TEST(Lagrangian, DualValueHelpers) {
  const Problem p(make_t1());
  const Schedule both{{0, 0, 2}, {1, 0, 1}};
  // inbound relaxation: DS 1 receives two trucks in slot 3
  const Multipliers slack = detail::relaxed_slack(p, both, true);
  EXPECT_EQ(slack.at(0, 3), -1.0);
  EXPECT_EQ(slack.at(0, 1), 1.0);
  Multipliers lambda(1, 3);
  lambda.at(0, 3) = 2.0;
  EXPECT_DOUBLE_EQ(detail::lagrangian_value(p, both, lambda, true), 12.0 - 2.0);
  const std::vector<double> w = detail::penalty_weights(p, lambda, true);
  EXPECT_EQ(w[p.network().var(p.network().lane_id(0, 0), 2)], -2.0);
  EXPECT_EQ(w[p.network().var(p.network().lane_id(0, 0), 1)], 0.0);
}

TEST(Lagrangian, CsvTrace) {
  const Problem p(testing::random_instance(45000));
  const LagrangianResult r = solve_lagrangian(p, LagrangianMethod::kObRelaxIlp);
  std::ostringstream os;
  r.state.write_csv(os);
  const std::string text = os.str();
  EXPECT_EQ(text.rfind("iteration,g_L,g_feas,norm2,alpha,incumbent_g,wall_ms\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')),
            r.state.trace.size() + 1);
}

}  // namespace
}  // namespace ndd
