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

#include "dyncover/local_branching.hpp"

#include "dyncover/oracle.hpp"
#include "fixtures.hpp"
#include "gtest/gtest.h"

namespace dyncover {
namespace {

using testing::fig1;
using testing::x1;

std::vector<double> Flat(const Solution& x, int extra = 0) {
  std::vector<double> v(x.size() + extra, 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) v[k] = x[k];
  return v;
}

// Every binary matrix of the given shape.
std::vector<Solution> AllPoints(int facilities, int periods) {
  std::vector<Solution> out;
  const int n = facilities * periods;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Solution x(facilities, periods);
    for (int k = 0; k < n; ++k) x[k] = (mask >> k) & 1;
    out.push_back(x);
  }
  return out;
}

bool RowsHold(const std::vector<LpRow>& rows, const std::vector<double>& v) {
  for (const LpRow& r : rows)
    if (r.violation(v) > 1e-9) return false;
  return true;
}

TEST(Distance, Examples) {
  const Solution a = make_solution(3, {{0}, {0}, {0}, {0}});
  const Solution b = make_solution(3, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  EXPECT_EQ(hamming_distance(a, b), 4);
  EXPECT_EQ(per_period_distance(a, b), (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(per_period_metric(a, b), 1);
  EXPECT_EQ(hamming_distance(a, a), 0);
  Solution c(2, 3);
  Solution d = c;
  d(1, 1) = 1;
  EXPECT_EQ(per_period_distance(c, d), (std::vector<int>{0, 1, 0}));
  Solution full(3, 2);
  for (std::size_t k = 0; k < full.size(); ++k) full[k] = 1;
  EXPECT_EQ(hamming_distance(Solution(3, 2), full), 6);
  EXPECT_THROW(hamming_distance(Solution(3, 2), Solution(2, 3)), std::invalid_argument);
}

TEST(Moves, Fig1) {
  const auto moves = enumerate_moves(fig1(), x1({1, 0, 0}));
  const std::vector<NeighborhoodMove> expected = {
      {MoveKind::kAdd, 0, 1},         {MoveKind::kAdd, 0, 2},        {MoveKind::kAdd2, 0, 1, 2},
      {MoveKind::kSwap, 0, 1, -1, 0}, {MoveKind::kSwap, 0, 2, -1, 0},
  };
  EXPECT_EQ(moves, expected);
  for (const auto& m : enumerate_moves(fig1(), x1({1, 1, 1}))) EXPECT_EQ(m.kind, MoveKind::kSwap);
  EXPECT_TRUE(enumerate_moves(fig1(), x1({1, 1, 1})).empty());
  for (const auto& m : enumerate_moves(fig1(), x1({0, 0, 0}))) EXPECT_NE(m.kind, MoveKind::kSwap);
}

TEST(Reformulation, Fig1) {
  const Instance inst = fig1();
  const RestrictedModel rm = build_restricted_reformulation(inst, x1({1, 0, 0}), singles_set(inst));
  EXPECT_EQ(rm.counts.current, 1);
  EXPECT_EQ(rm.counts.add, 2);
  EXPECT_EQ(rm.counts.remove, 1);
  EXPECT_EQ(rm.counts.remove2, 0);
  MilpOptions mo;
  mo.fractional_events = FractionalEvents::kNone;
  const MilpResult r = solve_milp(rm.model, {}, mo);
  ASSERT_EQ(r.status, MilpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 30, 1e-9);
  EXPECT_EQ(rounded_x(inst, r.incumbent), x1({1, 0, 1}));
  // The cut at x~ evaluates x~ + e_3 exactly.
  const Cut c = multi_cuts(inst, x1({1, 0, 0}), GammaVariant::kB1, singles_set(inst))[0];
  EXPECT_DOUBLE_EQ(evaluate_cut(c, x1({1, 0, 1})), 30);
}

// Adding one facility to x is evaluated exactly by the cuts at x (B0 and B1).
TEST(TrustCuts, SingleAddIsExact) {
  Xoshiro256 rng(5);
  int checked = 0;
  for (int trial = 0; checked < 500; ++trial) {
    const Instance inst = testing::random_instance(4000 + trial, 7, 3, 30, testing::template_for(trial));
    const Solution x = testing::random_solution(inst, rng, 0.4);
    const int t = rng.uniform_int(0, inst.periods() - 1);
    std::vector<int> closed;
    for (int i = 0; i < inst.facility_count(); ++i)
      if (!x(i, t)) closed.push_back(i);
    if (closed.empty()) continue;
    Solution y = x;
    y(closed[rng.uniform_int(0, static_cast<int>(closed.size()) - 1)], t) = 1;
    for (GammaVariant v : {GammaVariant::kB0, GammaVariant::kB1}) {
      const Cut c = multi_cuts(inst, x, v, singles_set(inst))[t];
      EXPECT_NEAR(evaluate_cut(c, y), period_coverage(inst, y, t), 1e-9);
    }
    ++checked;
  }
}

TEST(TrustCuts, IncrementalMatchesDirect) {
  Xoshiro256 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = testing::random_instance(4500 + trial, 7, 3, 40, testing::template_for(trial));
    const Solution x = testing::random_solution(inst, rng, 0.5);
    const auto singles = singles_set(inst);
    const int t = rng.uniform_int(0, inst.periods() - 1);
    const int a = rng.uniform_int(0, inst.facility_count() - 1);
    const int b = (a + 1) % inst.facility_count();
    detail::NeighborCuts cuts(inst, x, t, detail::mask_of(singles, inst.user_count()));
    Solution y = x;
    y(a, t) = 1 - y(a, t);
    EXPECT_TRUE(same_cut(cuts.at({{a, x(a, t) ? -1 : 1}}),
                         period_cut(inst, to_fractional(y), t, GammaVariant::kB1, singles)));
    if (b == a) continue;
    y(b, t) = 1 - y(b, t);
    EXPECT_TRUE(same_cut(cuts.at({{a, x(a, t) ? -1 : 1}, {b, x(b, t) ? -1 : 1}}),
                         period_cut(inst, to_fractional(y), t, GammaVariant::kB1, singles)));
  }
}

TEST(Restricted, Fig1) {
  const Instance inst = fig1();
  for (SubMode mode : {SubMode::kSubD, SubMode::kSubB}) {
    const auto r = solve_restricted(inst, x1({1, 0, 0}), 2, mode);
    ASSERT_TRUE(r.x);
    EXPECT_TRUE(r.solved);
    EXPECT_EQ(r.value, 30);
    EXPECT_EQ(*r.x, x1({1, 0, 1}));
    const auto same = solve_restricted(inst, x1({1, 0, 1}), 2, mode);
    EXPECT_EQ(*same.x, x1({1, 0, 1}));
  }
  EXPECT_THROW(solve_restricted(inst, x1({1, 0, 0}), 1, SubMode::kSubD), std::invalid_argument);
}

TEST(Restricted, MatchesNeighborhoodOracle) {
  Xoshiro256 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = testing::random_instance(5000 + trial, 8, 3, 30, testing::template_for(trial));
    if (inst.variable_count() > 20) continue;
    SCOPED_TRACE(inst.name());
    const auto g = greedy_warmstart(inst);
    ASSERT_TRUE(g);
    const auto opt = enumerate_neighborhood_optimum(inst, *g, 2);
    ASSERT_TRUE(opt);
    for (SubMode mode : {SubMode::kSubD, SubMode::kSubB}) {
      const auto r = solve_restricted(inst, *g, 2, mode);
      ASSERT_TRUE(r.x && r.solved);
      EXPECT_NEAR(r.value, opt->value, 1e-6);
      EXPECT_LE(per_period_metric(*r.x, *g), 2);
      EXPECT_TRUE(check_domain(inst, *r.x));
    }
  }
}

TEST(Restricted, MovesCoverTheNeighborhoodOnPerPeriodDomains) {
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = testing::random_instance(5500 + trial, 8, 3, 30, DomainTemplate::kCardinality);
    if (inst.variable_count() > 20) continue;
    const Solution center = *greedy_warmstart(inst);
    // Best over x~ and per-period combinations of moves, built from one-period moves.
    double best = coverage(inst, center);
    std::vector<std::vector<Solution>> per_period(inst.periods());
    for (int t = 0; t < inst.periods(); ++t) per_period[t].push_back(center);
    for (const auto& m : enumerate_moves(inst, center)) per_period[m.period].push_back(apply_move(center, m));
    std::vector<int> idx(inst.periods(), 0);
    while (true) {
      Solution x = center;
      for (int t = 0; t < inst.periods(); ++t)
        for (int i = 0; i < inst.facility_count(); ++i) x(i, t) = per_period[t][idx[t]](i, t);
      if (check_domain(inst, x)) best = std::max(best, coverage(inst, x));
      int t = 0;
      while (t < inst.periods() && ++idx[t] == static_cast<int>(per_period[t].size())) idx[t++] = 0;
      if (t == inst.periods()) break;
    }
    EXPECT_NEAR(solve_restricted(inst, center, 2, SubMode::kSubD).value, best, 1e-6);
  }
}

TEST(Diversified, Fig1) {
  const auto r = solve_diversified(fig1(), x1({1, 0, 1}), 3);
  ASSERT_TRUE(r.x);
  EXPECT_EQ(r.value, 28);
  EXPECT_EQ(*r.x, x1({1, 1, 0}));
  const Instance base = fig1();
  DomainSpec domain{{LinearConstraint{{{0, 0, 1.0}}, Sense::kGreaterEqual, 2.0}}};
  EXPECT_FALSE(solve_diversified(Instance(1, 3, base.users(), domain), x1({0, 0, 0}), 3).x);
}

TEST(SepD, Fig1Block) {
  const SepDBlock b = sepd_block(x1({1, 0, 0}), 2, 3);
  EXPECT_EQ(b.delta_count, 1);
  ASSERT_EQ(b.rows.size(), 2u);
  int satisfied = 0;
  for (const Solution& x : AllPoints(3, 1)) {
    std::vector<double> v = Flat(x, 1);
    if (RowsHold(b.rows, v)) {
      ++satisfied;
      EXPECT_EQ(x, x1({0, 1, 1}));
    }
  }
  EXPECT_EQ(satisfied, 1);
  const SepDBlock ng = sepd_block(x1({1, 0, 0}), 0, 3);
  ASSERT_EQ(ng.rows.size(), 1u);
  EXPECT_EQ(ng.delta_count, 0);
  EXPECT_TRUE(RowsHold(ng.rows, Flat(x1({1, 1, 0}))));
  EXPECT_FALSE(RowsHold(ng.rows, Flat(x1({1, 0, 0}))));
}

// Some delta in {0,1}^T satisfies the block iff x is outside the neighborhood.
TEST(SepD, ComplementarityExhaustive) {
  for (int T = 1; T <= 3; ++T)
    for (int I = 1; I <= 4; ++I) {
      if (T * I > 9) continue;
      const auto points = AllPoints(I, T);
      Xoshiro256 rng(T * 10 + I);
      for (int sample = 0; sample < 4; ++sample) {
        const Solution& center = points[rng.uniform_int(0, static_cast<int>(points.size()) - 1)];
        for (int kappa : {0, 1, 2}) {
          const SepDBlock b = sepd_block(center, kappa, I * T);
          for (const Solution& x : points) {
            bool any = false;
            for (int mask = 0; mask < (1 << b.delta_count) && !any; ++mask) {
              std::vector<double> v = Flat(x, b.delta_count);
              for (int t = 0; t < b.delta_count; ++t) v[I * T + t] = (mask >> t) & 1;
              any = RowsHold(b.rows, v);
            }
            EXPECT_EQ(any, per_period_metric(x, center) > kappa);
          }
        }
      }
    }
}

TEST(SepB, DisjointUnionExhaustive) {
  for (int T = 1; T <= 3; ++T)
    for (int I = 1; I <= 4; ++I) {
      if (T * I > 9) continue;
      const auto points = AllPoints(I, T);
      Xoshiro256 rng(T * 100 + I);
      for (int sample = 0; sample < 4; ++sample) {
        const Solution& center = points[rng.uniform_int(0, static_cast<int>(points.size()) - 1)];
        for (int kappa : {1, 2}) {
          const auto kids = sepb_branches(center, kappa);
          ASSERT_EQ(static_cast<int>(kids.size()), T);
          for (const Solution& x : points) {
            int in = 0;
            for (const auto& rows : kids) in += RowsHold(rows, Flat(x));
            EXPECT_LE(in, 1);
            EXPECT_EQ(in == 1, per_period_metric(x, center) > kappa);
          }
        }
      }
    }
}

TEST(SepB, BranchProblems) {
  LpModel base;
  for (int k = 0; k < 3; ++k) base.add_variable(0, 1, 1, true);
  const auto models = sepb_branch_problems(base, x1({1, 0, 0}), 2);
  ASSERT_EQ(models.size(), 1u);
  EXPECT_EQ(models[0].row_count(), 1);
}

std::vector<LbFeatures> AllLbConfigs() {
  LbFeatures a;
  LbFeatures b;
  b.sub = SubMode::kSubB;
  b.sep = SepMode::kSepB;
  LbFeatures c = b;
  c.trigger = SepBTrigger::kImproving;
  LbFeatures d;
  d.sep = SepMode::kSepB;
  return {a, b, c, d};
}

TEST(LocalBranching, Fig1) {
  for (const LbFeatures& f : AllLbConfigs()) {
    const SolveResult r = solve_lb(fig1(), f);
    SCOPED_TRACE(r.features);
    EXPECT_EQ(r.status, MilpStatus::kOptimal);
    EXPECT_EQ(r.objective, 30);
    EXPECT_EQ(r.method, "lb");
  }
}

TEST(LocalBranching, AgreesWithOracle) {
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = testing::random_instance(6000 + trial, 7, 3, 30, testing::template_for(trial));
    if (inst.variable_count() > 16) continue;
    SCOPED_TRACE(inst.name());
    const auto opt = enumerate_optimum(inst);
    const double g = coverage(inst, *greedy_warmstart(inst));
    for (const LbFeatures& f : AllLbConfigs()) {
      const SolveResult r = solve_lb(inst, f);
      SCOPED_TRACE(r.features);
      ASSERT_EQ(r.status, MilpStatus::kOptimal);
      EXPECT_NEAR(r.objective, opt->value, 1e-6);
      EXPECT_GE(r.objective, g - 1e-9);
      EXPECT_TRUE(check_domain(inst, *r.solution));
    }
  }
}

TEST(LocalBranching, RejectsBadKappa) {
  LbFeatures f;
  f.kappa = 3;
  EXPECT_THROW(solve_lb(fig1(), f), std::invalid_argument);
}

}  // namespace
}  // namespace dyncover
