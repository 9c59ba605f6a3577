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

#ifndef DYNCOVER_SOLVE_RESULT_HPP_
#define DYNCOVER_SOLVE_RESULT_HPP_

#include <optional>
#include <string>

#include "dyncover/milp.hpp"
#include "dyncover/model.hpp"

namespace dyncover {

/// Outcome of one solver run, with the counters reported per method.
struct SolveResult {
  std::string instance;
  std::string method;
  std::string features;
  MilpStatus status = MilpStatus::kInfeasible;
  std::optional<Solution> solution;
  double objective = 0.0;  // coverage of `solution`, recomputed exactly
  double bound = 0.0;
  double gap = 0.0;
  long nodes = 0;
  long lazy_cuts = 0;
  long user_cuts = 0;
  long restricted_subproblems = 0;
  long diversified_subproblems = 0;
  long branches = 0;
  double wall_seconds = 0.0;
};

}  // namespace dyncover

#endif  // DYNCOVER_SOLVE_RESULT_HPP_
