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

#include "ndd/ndd.hpp"
#include "support.hpp"

namespace ndd {
namespace {

TEST(Network, T1DeadlinesAndArrivals) {
  const Instance inst = make_t1();
  const Network net = build_derived(inst);
  EXPECT_EQ(net.forbidden().deadline(0, 0), 2);
  EXPECT_EQ(net.forbidden().deadline(1, 0), 1);
  EXPECT_TRUE(net.forbidden().is_forbidden(0, 0, 3));
  EXPECT_FALSE(net.forbidden().is_forbidden(0, 0, 2));
  const int lane = net.lane_id(1, 0);
  ASSERT_GE(lane, 0);
  EXPECT_EQ(net.arrival_slot(lane, 1), 3);
  const auto dep = net.arrivals().at(0, 3);
  const bool found = std::any_of(dep.begin(), dep.end(), [](const Departure& d) {
    return d.fc == 1 && d.slot == 1;
  });
  EXPECT_TRUE(found);
  EXPECT_EQ(net.max_inbound_degree(), 2);
  EXPECT_EQ(net.num_vars(), 3);
}

TEST(Network, MissingLaneIsInactive) {
  Instance inst = make_t1();
  inst.set_transit(1, 0, kNoLane);
  const Network net = build_derived(inst);
  EXPECT_EQ(net.lane_id(1, 0), -1);
  for (int t = 1; t <= 3; ++t) EXPECT_TRUE(net.forbidden().is_forbidden(1, 0, t));
  EXPECT_EQ(net.max_inbound_degree(), 1);
}

TEST(Network, FractionalTransitRoundsConservatively) {
  Instance inst = Instance::empty(1, 1, 1, 5);
  inst.arrival_deadline = {5};
  inst.set_transit(0, 0, 1.5);
  const Network net = build_derived(inst);
  const int lane = net.lane_id(0, 0);
  EXPECT_EQ(net.lane(lane).deadline, 3);
  EXPECT_EQ(net.arrival_slot(lane, 3), 5);
}

TEST(Network, TransitBeyondDeadlineDisablesLane) {
  Instance inst = Instance::empty(1, 1, 1, 3);
  inst.arrival_deadline = {2};
  inst.set_transit(0, 0, 2.0);
  EXPECT_EQ(departure_deadline(inst, 0, 0), 0);
  EXPECT_EQ(build_derived(inst).lane_id(0, 0), -1);
}

TEST(Instance, ValidateRejectsBadData) {
  Instance inst = make_t1();
  inst.arrival_deadline = {4};
  EXPECT_THROW(inst.validate(), InvalidInput);
  inst = make_t1();
  inst.ob_capacity = {0, 1};
  EXPECT_THROW(inst.validate(), InvalidInput);
  inst = make_t1();
  inst.set_transit(0, 0, -1.0);
  EXPECT_THROW(inst.validate(), InvalidInput);
  EXPECT_THROW(Instance::empty(0, 1, 1, 1), InvalidInput);
  EXPECT_NO_THROW(make_t1().validate());
}

TEST(Instance, NormalizeMergesAndDropsZeros) {
  Instance inst = Instance::empty(1, 1, 2, 2);
  inst.add_demand(0, 1, 2, 1.0);
  inst.add_demand(0, 0, 1, 2.0);
  inst.add_demand(0, 1, 2, 3.0);
  inst.add_demand(0, 0, 2, 0.0);
  inst.normalize_demand();
  ASSERT_EQ(inst.demand.size(), 2u);
  EXPECT_EQ(inst.demand[0], (DemandEntry{0, 0, 1, 2.0}));
  EXPECT_EQ(inst.demand[1], (DemandEntry{0, 1, 2, 4.0}));
  EXPECT_DOUBLE_EQ(inst.total_demand(), 6.0);
}

// Counterexample to augmentation, on an instance where both
// schedules are feasible: two FCs, two DSs, one slot, everything capacity 1.
TEST(Feasibility, AugmentationFailsOnValidFixture) {
  Instance inst = Instance::empty(2, 2, 1, 1);
  inst.arrival_deadline = {1, 1};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) inst.set_transit(i, j, 0.0);
  }
  const Schedule s1{{0, 0, 1}, {1, 1, 1}};
  const Schedule s2{{0, 1, 1}};
  EXPECT_TRUE(is_feasible(s1, inst, Variant::kFull));
  EXPECT_TRUE(is_feasible(s2, inst, Variant::kFull));
  EXPECT_GT(s1.size(), s2.size());
  for (const Truck& t : s1) {
    Schedule aug = s2;
    aug.insert(t);
    EXPECT_FALSE(is_feasible(aug, inst, Variant::kFull));
  }
}

Instance two_by_four_fixture() {
  Instance inst = Instance::empty(2, 4, 1, 2);
  inst.arrival_deadline = {2, 2, 2, 2};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 4; ++j) inst.set_transit(i, j, 0.0);
  }
  inst.ob_capacity = {2, 1};
  inst.ib_capacity = {1, 1, 1, 1};
  return inst;
}

TEST(Feasibility, NamedAugmentationsAreRejectedWithLocation) {
  const Instance inst = two_by_four_fixture();
  const Schedule s2{{0, 0, 1}, {0, 2, 1}, {0, 1, 2}, {0, 3, 2}, {1, 2, 2}, {1, 3, 1}};
  EXPECT_TRUE(is_feasible(s2, inst, Variant::kFull));

  Schedule a = s2;
  a.insert({0, 1, 1});
  EXPECT_TRUE(check_feasible(a, inst, Variant::kFull).has(ViolationKind::kOutbound, 0, 1));
  Schedule b = s2;
  b.insert({0, 0, 2});
  EXPECT_TRUE(check_feasible(b, inst, Variant::kFull).has(ViolationKind::kOutbound, 0, 2));
  Schedule c = s2;
  c.insert({1, 2, 1});
  EXPECT_TRUE(check_feasible(c, inst, Variant::kFull).has(ViolationKind::kInbound, 2, 1));
}

TEST(Feasibility, ReportsOverflowAmount) {
  const Instance inst = two_by_four_fixture();
  const Schedule s{{0, 0, 1}, {0, 1, 1}, {0, 2, 1}};
  const FeasibilityReport r = check_feasible(s, inst, Variant::kOutbound);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].overflow(), 1);
  EXPECT_EQ(r.violations[0].capacity, 2);
}

TEST(Feasibility, EmptyAndForbidden) {
  const Instance inst = make_t1();
  for (Variant v : {Variant::kOutbound, Variant::kInbound, Variant::kFull}) {
    EXPECT_TRUE(is_feasible(Schedule{}, inst, v));
  }
  const FeasibilityReport r = check_feasible(Schedule{{0, 0, 3}}, inst, Variant::kOutbound);
  EXPECT_TRUE(r.has(ViolationKind::kForbiddenSlot, 0, 3));
  EXPECT_THROW(check_feasible(Schedule{{2, 0, 1}}, inst, Variant::kFull), InvalidInput);
  EXPECT_THROW(check_feasible(Schedule{{0, 0, 4}}, inst, Variant::kFull), InvalidInput);
}

TEST(Feasibility, FullIsConjunctionAndMatchesReference) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 300; ++k) {
    const Instance inst = testing::random_instance(k);
    const auto all = testing::allowed_trucks(inst);
    Schedule s;
    for (const Truck& t : all) {
      if (rng() % 3 == 0) s.insert(t);
    }
    const bool ob = is_feasible(s, inst, Variant::kOutbound);
    const bool ib = is_feasible(s, inst, Variant::kInbound);
    EXPECT_EQ(is_feasible(s, inst, Variant::kFull), ob && ib);
    EXPECT_EQ(ob, testing::ref_feasible(inst, s, Variant::kOutbound));
    EXPECT_EQ(ib, testing::ref_feasible(inst, s, Variant::kInbound));
  }
}

TEST(Canonicalize, KeepsLatestPerLane) {
  const Schedule s{{0, 0, 1}, {0, 0, 2}};
  EXPECT_EQ(canonicalize(s), (Schedule{{0, 0, 2}}));
  const Schedule c{{0, 0, 2}, {1, 0, 1}};
  EXPECT_EQ(canonicalize(c), c);
}

TEST(Canonicalize, IdempotentAndPreservesG) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const Problem p(testing::random_instance(1000 + k));
    Schedule s;
    for (const Truck& t : testing::allowed_trucks(p.instance())) {
      if (rng() % 2 == 0) s.insert(t);
    }
    const Schedule c = canonicalize(s);
    EXPECT_EQ(canonicalize(c), c);
    EXPECT_DOUBLE_EQ(eval_g(p, c), eval_g(p, s));
    EXPECT_DOUBLE_EQ(eval_g(p, s), testing::ref_g(p.instance(), s));
  }
  const Problem t1(make_t1());
  const Schedule s{{0, 0, 1}, {0, 0, 2}, {1, 0, 1}};
  EXPECT_DOUBLE_EQ(eval_g(t1, canonicalize(s)), eval_g(t1, s));
}

TEST(Variant, ParseRoundTrip) {
  for (Variant v : {Variant::kOutbound, Variant::kInbound, Variant::kFull}) {
    EXPECT_EQ(parse_variant(to_string(v)), v);
  }
  EXPECT_THROW(parse_variant("both"), InvalidInput);
}

}  // namespace
}  // namespace ndd
