// Copyright 2026 The dyncover Authors
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

#include "dyncover/preprocess.hpp"

#include "dyncover/oracle.hpp"
#include "fixtures.hpp"
#include "gtest/gtest.h"

namespace dyncover {
namespace {

using testing::fig1;

Instance WithUsers(const Instance& base, std::vector<UserRecord> users) {
  return Instance(base.periods(), base.facility_count(), std::move(users), base.domain(),
                  base.name());
}

TEST(Singles, Fig1) { EXPECT_EQ(singles_set(fig1()), (std::vector<int>{0, 1, 2})); }

TEST(Singles, CoveredTwiceOrAcrossPeriods) {
  const Instance a(1, 2, {{{1.0}, {{0, 1}}}}, DomainSpec{});
  EXPECT_TRUE(singles_set(a).empty());
  const Instance b(2, 2, {{{1.0, 1.0}, {{0}, {0}}}}, DomainSpec{});
  EXPECT_TRUE(singles_set(b).empty());
}

TEST(DropUncoverable, RemovesOnlyEmptyUsers) {
  auto users = fig1().users();
  users.push_back({{4.0}, {{}}});
  const auto [out, report] = drop_uncoverable(WithUsers(fig1(), users));
  EXPECT_EQ(out.users(), fig1().users());
  EXPECT_EQ(report.removed_uncoverable, (std::vector<int>{6}));
  const auto [same, r2] = drop_uncoverable(fig1());
  EXPECT_EQ(same, fig1());
  EXPECT_TRUE(r2.removed_uncoverable.empty());
}

TEST(DropPrecovered, Fig1) {
  const auto [id, r0] = drop_precovered(fig1(), {});
  EXPECT_EQ(id, fig1());
  EXPECT_EQ(r0.constant_offset, 0);
  const auto [out, report] = drop_precovered(fig1(), {0});
  EXPECT_EQ(out.user_count(), 5);
  EXPECT_EQ(report.constant_offset, 10);
  EXPECT_THROW(drop_precovered(fig1(), {6}), std::invalid_argument);
}

TEST(Aggregate, MergesDuplicates) {
  auto users = fig1().users();
  users.push_back(users[3]);
  const auto [out, report] = aggregate_users(WithUsers(fig1(), users));
  EXPECT_EQ(out.user_count(), 6);
  EXPECT_EQ(out.demand(3, 0), 16);
  EXPECT_EQ(report.aggregation_map[6], 3);
  const auto [same, r2] = aggregate_users(fig1());
  EXPECT_EQ(same, fig1());
}

TEST(Aggregate, Idempotent) {
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = testing::random_instance(40 + trial, 6, 3, 40, testing::template_for(trial));
    const Instance once = aggregate_users(inst).first;
    EXPECT_EQ(aggregate_users(once).first, once);
  }
}

TEST(Preprocess, CoverageAndOptimumPreserved) {
  Xoshiro256 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = testing::random_instance(100 + trial, 8, 2, 30, testing::template_for(trial));
    std::vector<int> pre;
    for (int j = 0; j < inst.user_count(); ++j)
      if (rng.uniform() < 0.2) pre.push_back(j);
    const auto [u, ru] = drop_uncoverable(inst);
    const auto [a, ra] = aggregate_users(inst);
    const auto [p, rp] = drop_precovered(inst, pre);
    const auto [all, rall] = preprocess(inst, pre);
    double pre_demand = 0;
    for (int j : pre)
      for (int t = 0; t < inst.periods(); ++t) pre_demand += inst.demand(j, t);
    EXPECT_DOUBLE_EQ(rall.constant_offset, pre_demand);
    for (int k = 0; k < 5; ++k) {
      const Solution x = testing::random_solution(inst, rng);
      EXPECT_DOUBLE_EQ(coverage(u, x), coverage(inst, x));
      EXPECT_DOUBLE_EQ(coverage(a, x), coverage(inst, x));
      // Coverage when the precovered users count as covered.
      auto counts = coverage_counts(inst, x);
      double guaranteed = 0;
      std::vector<bool> is_pre(inst.user_count(), false);
      for (int j : pre) is_pre[j] = true;
      for (int j = 0; j < inst.user_count(); ++j)
        for (int t = 0; t < inst.periods(); ++t)
          if (is_pre[j] || counts.counts[j][t] > 0) guaranteed += inst.demand(j, t);
      EXPECT_DOUBLE_EQ(coverage(p, x) + rp.constant_offset, guaranteed);
      EXPECT_DOUBLE_EQ(coverage(all, x) + rall.constant_offset, guaranteed);
    }
    for (int s : rall.singles) EXPECT_LT(s, all.user_count());
    if (inst.variable_count() <= 16) {
      const auto o1 = enumerate_optimum(inst);
      const auto o2 = enumerate_optimum(a);
      const auto o3 = enumerate_optimum(u);
      ASSERT_TRUE(o1 && o2 && o3);
      EXPECT_DOUBLE_EQ(o1->value, o2->value);
      EXPECT_DOUBLE_EQ(o1->value, o3->value);
    }
  }
}

TEST(Preprocess, MapsComposeToOriginalIndices) {
  auto users = fig1().users();
  users.push_back({{4.0}, {{}}});   // 6: uncoverable
  users.push_back(users[5]);         // 7: duplicate of u6
  const Instance inst = WithUsers(fig1(), users);
  const auto [out, report] = preprocess(inst, {1});
  EXPECT_EQ(report.removed_uncoverable, (std::vector<int>{6}));
  EXPECT_EQ(report.removed_precovered, (std::vector<int>{1}));
  EXPECT_EQ(report.aggregation_map, (std::vector<int>{0, -1, 1, 2, 3, 4, -1, 4}));
  EXPECT_EQ(out.demand(4, 0), 6);
  EXPECT_EQ(report.constant_offset, 5);
}

}  // namespace
}  // namespace dyncover
