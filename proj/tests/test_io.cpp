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

#include "dyncover/io.hpp"

#include "dyncover/preprocess.hpp"
#include "fixtures.hpp"
#include "gtest/gtest.h"

namespace dyncover {
namespace {

using testing::fig1;

constexpr const char* kFig1Text = R"({
  "name": "fig1",
  "periods": 1,
  "facility_count": 3,
  "users": [
    {"demands": [10], "coverage": [[0]]},
    {"demands": [5], "coverage": [[1]]},
    {"demands": [7], "coverage": [[2]]},
    {"demands": [8], "coverage": [[0, 1]]},
    {"demands": [2], "coverage": [[0, 2]]},
    {"demands": [3], "coverage": [[1, 2]]}
  ],
  "domain": {"constraints": [
    {"type": "cardinality", "period": 0, "limit": 2}
  ]}
}
)";

TEST(Io, Fig1CanonicalText) { EXPECT_EQ(write_instance(fig1()), kFig1Text); }

TEST(Io, Fig1RoundTrip) {
  const Instance back = parse_instance(write_instance(fig1()));
  EXPECT_EQ(back, fig1());
  EXPECT_EQ(write_instance(back), kFig1Text);
}

TEST(Io, AllConstraintTypesRoundTrip) {
  const Instance base = fig1();
  DomainSpec d;
  d.constraints = {Cardinality{0, 2}, Knapsack{{{0, 0, 1.5}, {2, 0, 0.1}}, 3},
                   Precedence{{0, 0}, {1, 0}}, Persistence{}, Budget{0, {1, 2, 3}, 4.25},
                   LinearConstraint{{{1, 0, -1}}, Sense::kGreaterEqual, -1}};
  const Instance inst(1, 3, base.users(), d, "all-types");
  EXPECT_EQ(parse_instance(write_instance(inst)), inst);
}

TEST(Io, GeneratedRoundTrip) {
  for (int trial = 0; trial < 50; ++trial) {
    GeneratorParams p;
    p.seed = 77 + trial;
    p.periods = 1 + trial % 4;
    p.facility_count = 3 + trial % 7;
    p.user_count = 10 + trial;
    p.growth = 1.07;
    p.domain = testing::template_for(trial);
    const Instance inst = generate_instance(p);
    EXPECT_EQ(parse_instance(write_instance(inst)), inst);
  }
}

std::string ErrorOf(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

TEST(Io, RejectsZeroDemand) {
  std::string text = kFig1Text;
  text.replace(text.find("[10]"), 4, "[0]");
  EXPECT_NE(ErrorOf(text).find("$.users[0].demands[0]: demand must satisfy d_j^t > 0"),
            std::string::npos);
}

TEST(Io, RejectsFacilityOutOfRange) {
  std::string text = kFig1Text;
  text.replace(text.find("[[1, 2]]"), 8, "[[1, 3]]");
  EXPECT_NE(ErrorOf(text).find("$.users[5].coverage[0][1]: facility index out of range"),
            std::string::npos);
}

TEST(Io, RejectsPeriodMismatch) {
  std::string text = kFig1Text;
  text.replace(text.find("[5]"), 3, "[5, 5]");
  EXPECT_NE(ErrorOf(text).find("$.users[1].demands"), std::string::npos);
}

TEST(Io, SyntaxErrorReportsLine) {
  std::string text = kFig1Text;
  text.replace(text.find("\"periods\": 1,"), 13, "\"periods\": 1");
  EXPECT_EQ(ErrorOf(text).rfind("line 4:", 0), 0u) << ErrorOf(text);
}

TEST(Io, RejectsBadConstraint) {
  std::string text = kFig1Text;
  text.replace(text.find("cardinality"), 11, "cardinal");
  EXPECT_NE(ErrorOf(text).find("unknown constraint type"), std::string::npos);
}

TEST(Io, SolutionRoundTrip) {
  const Solution x = make_solution(3, {{0, 2}});
  EXPECT_EQ(write_solution(x), "{\"x\": [[1, 0, 1]]}\n");
  EXPECT_EQ(parse_solution(write_solution(x), fig1()), x);
  EXPECT_THROW(parse_solution("{\"x\": [[1, 0]]}", fig1()), ParseError);
}

TEST(Io, CsvRow) {
  EXPECT_EQ(std::string(result_csv_header()),
            "instance,method,features,status,objective,bound,gap_percent,nodes,lazy_cuts,"
            "user_cuts,restricted_subproblems,diversified_subproblems,branches,wall_seconds");
  SolveResult r;
  r.instance = "fig1";
  r.method = "abbc";
  r.features = "multicut+pareto";
  r.status = MilpStatus::kOptimal;
  r.solution = make_solution(3, {{0, 2}});
  r.objective = 30;
  r.bound = 30.00001;
  r.gap = (r.bound - 30) / r.bound;
  r.nodes = 3;
  r.wall_seconds = 0.0123;
  EXPECT_EQ(write_result(r), "fig1,abbc,multicut+pareto,optimal,30,30.00001,0.00,3,0,0,0,0,0,0.012");
}

TEST(Generator, Deterministic) {
  GeneratorParams p;
  p.seed = 123;
  p.domain = DomainTemplate::kEvStyle;
  EXPECT_EQ(generate_instance(p), generate_instance(p));
  GeneratorParams q = p;
  q.seed = 124;
  EXPECT_NE(generate_instance(p), generate_instance(q));
}

TEST(Generator, RadiusExtremes) {
  GeneratorParams p;
  p.radius = 1.5;
  const Instance all = generate_instance(p);
  for (const auto& u : all.users())
    for (const auto& cov : u.covering) EXPECT_EQ(static_cast<int>(cov.size()), p.facility_count);
  p.radius = 1e-9;
  EXPECT_EQ(drop_uncoverable(generate_instance(p)).first.user_count(), 0);
}

TEST(Generator, DemandGrowth) {
  GeneratorParams p;
  p.periods = 3;
  p.growth = 2.0;
  const Instance inst = generate_instance(p);
  for (const auto& u : inst.users()) {
    EXPECT_NEAR(u.demands[1], 2 * u.demands[0], 1.0 / 512);
    EXPECT_EQ(u.demands[2] * 1024, std::round(u.demands[2] * 1024));
  }
}

TEST(Random, ReferenceStream) {
  // splitmix64 from 0 and the first xoshiro256** output for that state.
  SplitMix64 sm(0);
  EXPECT_EQ(sm.next(), 0xe220a8397b1dcdafULL);
  Xoshiro256 a(42), b(42);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a(), b());
}

}  // namespace
}  // namespace dyncover
