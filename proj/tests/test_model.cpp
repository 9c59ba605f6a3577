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

#include "dyncover/model.hpp"

#include <random>

#include "fixtures.hpp"
#include "gtest/gtest.h"

namespace dyncover {
namespace {

using testing::fig1;
using testing::x1;
using testing::xf1;

TEST(CoverageTest, Fig1Values) {
  const Instance inst = fig1();
  EXPECT_EQ(coverage(inst, x1({1, 0, 0})), 20.0);
  EXPECT_EQ(coverage(inst, x1({0, 0, 0})), 0.0);
  EXPECT_EQ(coverage(inst, x1({1, 1, 0})), 28.0);
  EXPECT_EQ(coverage(inst, x1({1, 0, 1})), 30.0);
}

TEST(CoverageTest, Counts) {
  const Instance inst = fig1();
  auto cc = coverage_counts(inst, x1({1, 0, 0}));
  std::vector<int> got;
  for (const auto& row : cc.counts) got.push_back(row[0]);
  EXPECT_EQ(got, (std::vector<int>{1, 0, 0, 1, 1, 0}));

  cc = coverage_counts(inst, x1({1, 1, 1}));
  got.clear();
  for (const auto& row : cc.counts) got.push_back(row[0]);
  EXPECT_EQ(got, (std::vector<int>{1, 1, 1, 2, 2, 2}));

  cc = coverage_counts(inst, x1({0, 0, 0}));
  for (const auto& row : cc.counts) EXPECT_EQ(row[0], 0);
}

TEST(CoverageTest, FractionalCounts) {
  const Instance inst = fig1();
  auto c = fractional_coverage_counts(inst, xf1({0, 0.75, 0.75}));
  EXPECT_DOUBLE_EQ(c[5][0], 1.5);
  c = fractional_coverage_counts(inst, xf1({0.4, 0.4, 0.4}));
  EXPECT_DOUBLE_EQ(c[3][0], 0.8);
  c = fractional_coverage_counts(inst, xf1({0, 0, 0}));
  for (const auto& row : c) EXPECT_EQ(row[0], 0.0);
  EXPECT_NEAR(fractional_coverage(inst, xf1({0, 0.75, 0.75})), 19.5, 1e-9);
  EXPECT_THROW(fractional_coverage_counts(inst, xf1({0, 1.1, 0})), std::invalid_argument);
}

TEST(CoverageTest, DimensionMismatchThrows) {
  const Instance inst = fig1();
  EXPECT_THROW(coverage(inst, x1({1, 0})), std::invalid_argument);
  EXPECT_THROW(coverage_counts(inst, Solution(3, 2)), std::invalid_argument);
}

TEST(DomainTest, Cardinality) {
  const Instance inst = fig1();
  EXPECT_TRUE(check_domain(inst, x1({1, 0, 1})));
  EXPECT_FALSE(check_domain(inst, x1({1, 1, 1})));
}

TEST(DomainTest, PersistenceForbidsRemoval) {
  std::vector<UserRecord> users = {{{1.0, 1.0}, {{0}, {0}}}};
  const Instance inst(2, 1, users, DomainSpec{{Persistence{}}});
  Solution x(1, 2);
  x(0, 0) = 1;
  EXPECT_FALSE(check_domain(inst, x));
  x(0, 1) = 1;
  EXPECT_TRUE(check_domain(inst, x));
}

TEST(DomainTest, BudgetChargesOnlyNewOpenings) {
  std::vector<UserRecord> users = {{{1.0, 1.0}, {{0, 1}, {0, 1}}}};
  DomainSpec domain{{Persistence{}, Budget{0, {3.0, 2.0}, 3.0}, Budget{1, {3.0, 2.0}, 2.0}}};
  const Instance inst(2, 2, users, domain);
  EXPECT_TRUE(check_domain(inst, make_solution(2, {{0}, {0, 1}})));
  EXPECT_FALSE(check_domain(inst, make_solution(2, {{0, 1}, {0, 1}})));
  EXPECT_FALSE(check_domain(inst, make_solution(2, {{}, {0}})));
}

TEST(DomainTest, PrecedenceAndLinear) {
  std::vector<UserRecord> users = {{{1.0}, {{0, 1}}}};
  DomainSpec domain{{Precedence{{0, 0}, {1, 0}},
                     LinearConstraint{{{0, 0, 1.0}, {1, 0, 1.0}}, Sense::kGreaterEqual, 1.0}}};
  const Instance inst(1, 2, users, domain);
  EXPECT_FALSE(check_domain(inst, x1({0, 1})));
  EXPECT_FALSE(check_domain(inst, x1({0, 0})));
  EXPECT_TRUE(check_domain(inst, x1({1, 0})));
  EXPECT_TRUE(check_domain(inst, x1({1, 1})));
}

TEST(InstanceTest, RejectsInvalidData) {
  EXPECT_THROW(Instance(1, 2, {{{0.0}, {{0}}}}, {}), std::invalid_argument);
  EXPECT_THROW(Instance(1, 2, {{{1.0}, {{2}}}}, {}), std::invalid_argument);
  EXPECT_THROW(Instance(1, 2, {{{1.0}, {{1, 1}}}}, {}), std::invalid_argument);
  EXPECT_THROW(Instance(2, 2, {{{1.0}, {{1}}}}, {}), std::invalid_argument);
  EXPECT_THROW(Instance(1, 2, {}, DomainSpec{{Cardinality{3, 1.0}}}), std::invalid_argument);
}

// Direct double loop over min{1, sum_i a_ij^t x_i^t} d_j^t with a dense a.
double direct_coverage(const Instance& inst, const Solution& x) {
  double total = 0.0;
  for (int t = 0; t < inst.periods(); ++t) {
    for (int j = 0; j < inst.user_count(); ++j) {
      int s = 0;
      for (int i = 0; i < inst.facility_count(); ++i) {
        const auto& cov = inst.covering(j, t);
        const int a = std::find(cov.begin(), cov.end(), i) != cov.end() ? 1 : 0;
        s += a * x(i, t);
      }
      total += std::min(1, s) * inst.demand(j, t);
    }
  }
  return total;
}

TEST(CoverageProperty, MatchesDirectEvaluationBoundsAndMonotone) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int T = 1 + static_cast<int>(rng() % 3);
    const int I = 1 + static_cast<int>(rng() % 6);
    const int J = static_cast<int>(rng() % 12);
    std::vector<UserRecord> users;
    double total = 0.0;
    for (int j = 0; j < J; ++j) {
      UserRecord u;
      for (int t = 0; t < T; ++t) {
        u.demands.push_back(1 + static_cast<double>(rng() % 20) / 4.0);
        total += u.demands.back();
        std::vector<int> cov;
        for (int i = 0; i < I; ++i)
          if (rng() % 3 == 0) cov.push_back(i);
        u.covering.push_back(cov);
      }
      users.push_back(u);
    }
    const Instance inst(T, I, users, {});
    Solution x(I, T);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = rng() % 2;
    const double f = coverage(inst, x);
    EXPECT_EQ(f, direct_coverage(inst, x));
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, total);
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k]) continue;
      Solution y = x;
      y[k] = 1;
      EXPECT_GE(coverage(inst, y), f);
    }
    Solution all(I, T, 1);
    bool everyone_coverable = true;
    for (int j = 0; j < J; ++j)
      for (int t = 0; t < T; ++t) everyone_coverable &= !inst.covering(j, t).empty();
    EXPECT_EQ(coverage(inst, all) == total, everyone_coverable);
  }
}

}  // namespace
}  // namespace dyncover
