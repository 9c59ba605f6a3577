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

// Exact user reductions. None of them changes the optimal facility decisions;
// precovered elimination shifts the objective by a constant.

#ifndef DYNCOVER_PREPROCESS_HPP_
#define DYNCOVER_PREPROCESS_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dyncover/model.hpp"

namespace dyncover {

struct PreprocessReport {
  std::vector<int> removed_uncoverable;
  std::vector<int> removed_precovered;
  // Original user index -> index in the reduced instance, -1 if removed.
  std::vector<int> aggregation_map;
  std::vector<int> singles;
  double constant_offset = 0.0;
};

/// J_s: users whose covering lists contain exactly one entry over all periods.
inline std::vector<int> singles_set(const Instance& inst) {
  std::vector<int> out;
  for (int j = 0; j < inst.user_count(); ++j) {
    std::size_t total = 0;
    for (int t = 0; t < inst.periods(); ++t) total += inst.covering(j, t).size();
    if (total == 1) out.push_back(j);
  }
  return out;
}

namespace detail {

inline Instance with_users(const Instance& inst, std::vector<UserRecord> users) {
  return Instance(inst.periods(), inst.facility_count(), std::move(users), inst.domain(),
                  inst.name());
}

}  // namespace detail

inline std::pair<Instance, PreprocessReport> drop_uncoverable(const Instance& inst) {
  PreprocessReport report;
  report.aggregation_map.assign(inst.user_count(), -1);
  std::vector<UserRecord> kept;
  for (int j = 0; j < inst.user_count(); ++j) {
    bool coverable = false;
    for (int t = 0; t < inst.periods() && !coverable; ++t)
      coverable = !inst.covering(j, t).empty();
    if (coverable) {
      report.aggregation_map[j] = static_cast<int>(kept.size());
      kept.push_back(inst.user(j));
    } else {
      report.removed_uncoverable.push_back(j);
    }
  }
  Instance out = detail::with_users(inst, std::move(kept));
  report.singles = singles_set(out);
  return {std::move(out), std::move(report)};
}

/// Removes users whose coverage is guaranteed outside the model; their total
/// demand becomes `constant_offset`.
inline std::pair<Instance, PreprocessReport> drop_precovered(const Instance& inst,
                                                             const std::vector<int>& precovered) {
  std::vector<bool> drop(inst.user_count(), false);
  for (int j : precovered) {
    if (j < 0 || j >= inst.user_count())
      throw std::invalid_argument("drop_precovered: user index out of range");
    drop[j] = true;
  }
  PreprocessReport report;
  report.aggregation_map.assign(inst.user_count(), -1);
  std::vector<UserRecord> kept;
  for (int j = 0; j < inst.user_count(); ++j) {
    if (drop[j]) {
      report.removed_precovered.push_back(j);
      for (double d : inst.user(j).demands) report.constant_offset += d;
    } else {
      report.aggregation_map[j] = static_cast<int>(kept.size());
      kept.push_back(inst.user(j));
    }
  }
  Instance out = detail::with_users(inst, std::move(kept));
  report.singles = singles_set(out);
  return {std::move(out), std::move(report)};
}

/// Merges users with identical period-indexed covering sets. Groups are
/// numbered by first occurrence.
inline std::pair<Instance, PreprocessReport> aggregate_users(const Instance& inst) {
  PreprocessReport report;
  report.aggregation_map.assign(inst.user_count(), -1);
  std::map<std::vector<std::vector<int>>, int> group_of;
  std::vector<UserRecord> merged;
  for (int j = 0; j < inst.user_count(); ++j) {
    std::vector<std::vector<int>> key = inst.user(j).covering;
    for (auto& cov : key) std::sort(cov.begin(), cov.end());
    auto [it, inserted] = group_of.emplace(key, static_cast<int>(merged.size()));
    if (inserted) {
      merged.push_back(inst.user(j));
    } else {
      auto& target = merged[it->second].demands;
      for (int t = 0; t < inst.periods(); ++t) target[t] += inst.demand(j, t);
    }
    report.aggregation_map[j] = it->second;
  }
  Instance out = detail::with_users(inst, std::move(merged));
  report.singles = singles_set(out);
  return {std::move(out), std::move(report)};
}

/// drop_uncoverable -> drop_precovered -> aggregate_users, with the maps
/// composed back to original user indices.
inline std::pair<Instance, PreprocessReport> preprocess(const Instance& inst,
                                                        const std::vector<int>& precovered = {}) {
  auto [a, ra] = drop_uncoverable(inst);
  std::vector<int> pre_mapped;
  for (int j : precovered) {
    if (j < 0 || j >= inst.user_count())
      throw std::invalid_argument("preprocess: precovered index out of range");
    if (ra.aggregation_map[j] >= 0) pre_mapped.push_back(ra.aggregation_map[j]);
  }
  auto [b, rb] = drop_precovered(a, pre_mapped);
  auto [c, rc] = aggregate_users(b);

  PreprocessReport report;
  report.removed_uncoverable = ra.removed_uncoverable;
  for (int j = 0; j < inst.user_count(); ++j) {
    int k = ra.aggregation_map[j];
    if (k >= 0) k = rb.aggregation_map[k];
    if (k >= 0) k = rc.aggregation_map[k];
    report.aggregation_map.push_back(k);
  }
  // A precovered user that no facility covers is removed by the first pass but
  // its demand still counts toward the offset.
  std::set<int> pre(precovered.begin(), precovered.end());
  report.constant_offset = rb.constant_offset;
  for (int j : pre) {
    if (ra.aggregation_map[j] >= 0) {
      report.removed_precovered.push_back(j);
    } else {
      for (double d : inst.user(j).demands) report.constant_offset += d;
    }
  }
  report.singles = rc.singles;
  return {std::move(c), std::move(report)};
}

}  // namespace dyncover

#endif  // DYNCOVER_PREPROCESS_HPP_
