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

// Everything in one include.

#ifndef DYNCOVER_DYNCOVER_HPP_
#define DYNCOVER_DYNCOVER_HPP_

#include "dyncover/bdd.hpp"
#include "dyncover/benders.hpp"
#include "dyncover/greedy.hpp"
#include "dyncover/io.hpp"
#include "dyncover/local_branching.hpp"
#include "dyncover/log.hpp"
#include "dyncover/lp.hpp"
#include "dyncover/milp.hpp"
#include "dyncover/model.hpp"
#include "dyncover/oracle.hpp"
#include "dyncover/preprocess.hpp"
#include "dyncover/random.hpp"
#include "dyncover/solve_result.hpp"
#include "dyncover/solvers.hpp"

#endif  // DYNCOVER_DYNCOVER_HPP_
