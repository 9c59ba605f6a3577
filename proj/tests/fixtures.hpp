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

#ifndef DYNCOVER_TESTS_FIXTURES_HPP_
#define DYNCOVER_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dyncover/io.hpp"
#include "dyncover/model.hpp"
#include "dyncover/random.hpp"

namespace dyncover::testing {

// Three facilities, one period, six user regions:
//   u1 {i1} 10, u2 {i2} 5, u3 {i3} 7, u4 {i1,i2} 8, u5 {i1,i3} 2, u6 {i2,i3} 3
// with at most two facilities open.
inline Instance fig1() {
  std::vector<UserRecord> users = {
      {{10.0}, {{0}}},    {{5.0}, {{1}}},    {{7.0}, {{2}}},
      {{8.0}, {{0, 1}}}, {{2.0}, {{0, 2}}}, {{3.0}, {{1, 2}}},
  };
  DomainSpec domain{{Cardinality{0, 2.0}}};
  return Instance(1, 3, std::move(users), std::move(domain), "fig1");
}

// fig1 replicated over `periods` independent periods (cardinality per period).
inline Instance fig1_periods(int periods) {
  const Instance base = fig1();
  std::vector<UserRecord> users;
  for (const auto& u : base.users()) {
    UserRecord r;
    r.demands.assign(periods, u.demands[0]);
    r.covering.assign(periods, u.covering[0]);
    users.push_back(r);
  }
  DomainSpec domain;
  for (int t = 0; t < periods; ++t) domain.constraints.push_back(Cardinality{t, 2.0});
  return Instance(periods, 3, std::move(users), std::move(domain), "fig1x" + std::to_string(periods));
}

inline Solution x1(std::vector<int> v) {
  Solution x(static_cast<int>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<int>(i), 0) = static_cast<std::uint8_t>(v[i]);
  return x;
}

inline FractionalSolution xf1(std::vector<double> v) {
  FractionalSolution x(static_cast<int>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<int>(i), 0) = v[i];
  return x;
}

// Small seeded instance with dimensions drawn from the given ranges.
inline Instance random_instance(std::uint64_t seed, int max_facilities, int max_periods,
                                int max_users, DomainTemplate domain) {
  Xoshiro256 rng(seed ^ 0x5eedULL);
  GeneratorParams p;
  p.seed = seed;
  p.facility_count = rng.uniform_int(2, max_facilities);
  p.periods = rng.uniform_int(1, max_periods);
  p.user_count = rng.uniform_int(1, max_users);
  p.radius = 0.2 + 0.3 * rng.uniform();
  p.growth = 1.0 + 0.2 * rng.uniform();
  p.domain = domain;
  p.cardinality = rng.uniform_int(1, std::max(1, p.facility_count / 2));
  p.budget = rng.uniform_int(1, 5);
  return generate_instance(p);
}

inline DomainTemplate template_for(int k) {
  static const DomainTemplate all[] = {DomainTemplate::kCardinality, DomainTemplate::kEvStyle,
                                       DomainTemplate::kKnapsack};
  return all[k % 3];
}

inline Solution random_solution(const Instance& inst, Xoshiro256& rng, double p_open = 0.4) {
  Solution x(inst.facility_count(), inst.periods());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = rng.uniform() < p_open ? 1 : 0;
  return x;
}

inline FractionalSolution random_fractional(const Instance& inst, Xoshiro256& rng) {
  FractionalSolution x(inst.facility_count(), inst.periods());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double u = rng.uniform();
    x[k] = u < 0.2 ? 0.0 : (u < 0.4 ? 1.0 : rng.uniform());
  }
  return x;
}

// Every feasible binary point, for instances with few variables.
inline std::vector<Solution> all_feasible(const Instance& inst) {
  std::vector<Solution> out;
  const int n = inst.variable_count();
  for (long mask = 0; mask < (1L << n); ++mask) {
    Solution x(inst.facility_count(), inst.periods());
    for (int k = 0; k < n; ++k) x[k] = (mask >> k) & 1;
    if (check_domain(inst, x)) out.push_back(x);
  }
  return out;
}

}  // namespace dyncover::testing

#endif  // DYNCOVER_TESTS_FIXTURES_HPP_
