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

// Exhaustive search over {0,1}^{I x T}, used as ground truth.
//
// Points are visited in Gray-code order so each step flips one entry and
// updates coverage counts, row activities and distances incrementally. Any
// point whose running value comes within 1e-6 of the best is re-evaluated
// from scratch before it can win, and ties go to the lexicographically
// smallest flat (period-major) vector.

#ifndef DYNCOVER_ORACLE_HPP_
#define DYNCOVER_ORACLE_HPP_

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dyncover/model.hpp"

namespace dyncover {

inline constexpr int kOracleMaxVariables = 24;

struct OracleResult {
  Solution x;
  double value = 0.0;
};

enum class DistanceMetric { kPerPeriod, kHamming };

namespace detail {

class GrayEnumerator {
 public:
  explicit GrayEnumerator(const Instance& inst) : inst_(inst), x_(inst.facility_count(), inst.periods()) {
    const int n = inst.variable_count();
    if (n > kOracleMaxVariables)
      throw std::invalid_argument("oracle: more than 24 binary variables");
    rows_ = inst.lower_domain();
    var_rows_.resize(n);
    activity_.assign(rows_.size(), 0.0);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [k, a] : rows_[r].terms) var_rows_[k].push_back({static_cast<int>(r), a});
    row_ok_.resize(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      row_ok_[r] = satisfied(r);
      violated_ += row_ok_[r] ? 0 : 1;
    }
    var_users_.resize(n);
    for (int j = 0; j < inst.user_count(); ++j)
      for (int t = 0; t < inst.periods(); ++t)
        for (int i : inst.covering(j, t)) var_users_[inst.var(i, t)].push_back(j);
    counts_.assign(static_cast<std::size_t>(inst.user_count()) * inst.periods(), 0);
  }

  // Calls visit() on every point; visit sees the current state through accessors.
  template <typename Visit>
  void run(Visit&& visit) {
    const int n = inst_.variable_count();
    visit();
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t s = 1; s < total; ++s) {
      flip(std::countr_zero(s));
      visit();
    }
  }

  bool feasible() const { return violated_ == 0; }
  double value() const { return value_; }
  const Solution& x() const { return x_; }
  // Set by flip(); the index of the entry changed by the last step.
  int last_flip() const { return last_; }

 private:
  bool satisfied(std::size_t r) const {
    const double lhs = activity_[r];
    const double tol = 1e-7;
    switch (rows_[r].sense) {
      case Sense::kLessEqual:
        return lhs <= rows_[r].rhs + tol;
      case Sense::kGreaterEqual:
        return lhs >= rows_[r].rhs - tol;
      case Sense::kEqual:
        return std::abs(lhs - rows_[r].rhs) <= tol;
    }
    return false;
  }

  void flip(int k) {
    last_ = k;
    const int t = k / inst_.facility_count();
    const int i = k % inst_.facility_count();
    const bool opening = x_(i, t) == 0;
    x_(i, t) = opening ? 1 : 0;
    const double sign = opening ? 1.0 : -1.0;
    for (const auto& [r, a] : var_rows_[k]) {
      activity_[r] += sign * a;
      const bool ok = satisfied(r);
      if (ok != row_ok_[r]) {
        violated_ += ok ? -1 : 1;
        row_ok_[r] = ok;
      }
    }
    for (int j : var_users_[k]) {
      int& c = counts_[static_cast<std::size_t>(j) * inst_.periods() + t];
      if (opening) {
        if (c++ == 0) value_ += inst_.demand(j, t);
      } else {
        if (--c == 0) value_ -= inst_.demand(j, t);
      }
    }
  }

  struct RowRef {
    int row;
    double coef;
  };

  const Instance& inst_;
  Solution x_;
  std::vector<DomainRow> rows_;
  std::vector<std::vector<RowRef>> var_rows_;
  std::vector<double> activity_;
  std::vector<bool> row_ok_;
  int violated_ = 0;
  std::vector<std::vector<int>> var_users_;
  std::vector<int> counts_;
  double value_ = 0.0;
  int last_ = -1;
};

inline bool lex_less(const Solution& a, const Solution& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return a[k] < b[k];
  return false;
}

template <typename Accept>
std::optional<OracleResult> search(const Instance& inst, Accept&& accept) {
  GrayEnumerator g(inst);
  std::optional<OracleResult> best;
  g.run([&] {
    // accept() runs on every point so it can track incremental state.
    const bool accepted = accept(g);
    if (!accepted || !g.feasible()) return;
    if (best && g.value() < best->value - 1e-6) return;
    if (!check_domain(inst, g.x())) return;
    const double exact = coverage(inst, g.x());
    if (!best || exact > best->value || (exact == best->value && lex_less(g.x(), best->x)))
      best = OracleResult{g.x(), exact};
  });
  return best;
}

}  // namespace detail

/// Exact optimum over Omega; nullopt when Omega has no binary point.
inline std::optional<OracleResult> enumerate_optimum(const Instance& inst) {
  return detail::search(inst, [](const detail::GrayEnumerator&) { return true; });
}

/// Exact optimum over the points within distance kappa of x_tilde.
inline std::optional<OracleResult> enumerate_neighborhood_optimum(
    const Instance& inst, const Solution& x_tilde, int kappa,
    DistanceMetric metric = DistanceMetric::kPerPeriod) {
  if (x_tilde.facilities() != inst.facility_count() || x_tilde.periods() != inst.periods())
    throw std::invalid_argument("enumerate_neighborhood_optimum: dimension mismatch");
  // Distances of the all-zero start point, then maintained per flip.
  std::vector<int> dist(inst.periods(), 0);
  int total = 0;
  for (int t = 0; t < inst.periods(); ++t)
    for (int i = 0; i < inst.facility_count(); ++i) dist[t] += x_tilde(i, t);
  for (int d : dist) total += d;
  auto within = [&] {
    if (metric == DistanceMetric::kHamming) return total <= kappa;
    for (int d : dist)
      if (d > kappa) return false;
    return true;
  };
  return detail::search(inst, [&](const detail::GrayEnumerator& g) {
    const int k = g.last_flip();
    if (k >= 0) {
      const int t = k / inst.facility_count();
      const int i = k % inst.facility_count();
      const int delta = g.x()(i, t) != x_tilde(i, t) ? 1 : -1;
      dist[t] += delta;
      total += delta;
    }
    return within();
  });
}

}  // namespace dyncover

#endif  // DYNCOVER_ORACLE_HPP_
