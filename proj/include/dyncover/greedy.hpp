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

// Greedy warm start: open the facility with the largest coverage gain until no
// feasible opening gains anything. With Persistence in the domain a move opens
// facility i from period t through the last period.

#ifndef DYNCOVER_GREEDY_HPP_
#define DYNCOVER_GREEDY_HPP_

#include <optional>
#include <vector>

#include "dyncover/model.hpp"

namespace dyncover {

/// nullopt only when the all-closed solution is outside Omega.
inline std::optional<Solution> greedy_warmstart(const Instance& inst) {
  const int nf = inst.facility_count();
  const int np = inst.periods();
  Solution x(nf, np);
  if (!check_domain(inst, x)) return std::nullopt;
  const bool persistent = inst.domain().has_persistence();

  std::vector<std::vector<std::vector<int>>> by_facility(np);
  for (int t = 0; t < np; ++t) by_facility[t] = inst.users_by_facility(t);
  CoverageCount counts = coverage_counts(inst, x);

  while (true) {
    double best_gain = 0.0;
    int best_i = -1;
    int best_t = -1;
    for (int t = 0; t < np; ++t) {
      for (int i = 0; i < nf; ++i) {
        if (x(i, t)) continue;
        const int last = persistent ? np : t + 1;
        Solution cand = x;
        double gain = 0.0;
        for (int s = t; s < last; ++s) {
          if (cand(i, s)) continue;
          cand(i, s) = 1;
          for (int j : by_facility[s][i])
            if (counts.counts[j][s] == 0) gain += inst.demand(j, s);
        }
        if (gain > best_gain && check_domain(inst, cand)) {
          best_gain = gain;
          best_i = i;
          best_t = t;
        }
      }
    }
    if (best_i < 0) break;
    const int last = persistent ? np : best_t + 1;
    for (int s = best_t; s < last; ++s) {
      if (x(best_i, s)) continue;
      x(best_i, s) = 1;
      for (int j : by_facility[s][best_i]) ++counts.counts[j][s];
    }
  }
  return x;
}

}  // namespace dyncover

#endif  // DYNCOVER_GREEDY_HPP_
