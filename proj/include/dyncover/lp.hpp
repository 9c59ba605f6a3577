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

// A small bounded-variable primal simplex for maximization problems.
//
// Every row r gets a slack s_r with a_r x + s_r = b_r, so the slack bounds
// encode the row sense. The basis inverse is kept dense and refactored from
// scratch periodically; this is meant for models with at most a few hundred
// rows. Phase 1 adds one artificial per row whose slack cannot absorb the
// initial residual and maximizes minus their sum; in phase 2 the artificials
// are fixed at zero.
//
// Pricing is Dantzig's rule. After 10 * (rows + cols) consecutive degenerate
// pivots the solve switches to Bland's rule for the rest of the run.

#ifndef DYNCOVER_LP_HPP_
#define DYNCOVER_LP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dyncover/model.hpp"

namespace dyncover {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LpVariable {
  double lower = 0.0;
  double upper = 1.0;
  double objective = 0.0;
  bool integer = false;
};

struct LpRow {
  std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;

  double activity(std::span<const double> x) const {
    double s = 0.0;
    for (const auto& [k, a] : terms) s += a * x[k];
    return s;
  }
  /// Amount by which x violates the row (0 when satisfied).
  double violation(std::span<const double> x) const {
    const double lhs = activity(x);
    switch (sense) {
      case Sense::kLessEqual:
        return std::max(0.0, lhs - rhs);
      case Sense::kGreaterEqual:
        return std::max(0.0, rhs - lhs);
      case Sense::kEqual:
        return std::abs(lhs - rhs);
    }
    return 0.0;
  }
};

/// max c^T x  s.t.  rows, lower <= x <= upper.
struct LpModel {
  std::vector<LpVariable> variables;
  std::vector<LpRow> rows;

  int add_variable(double lower, double upper, double objective, bool integer = false) {
    variables.push_back({lower, upper, objective, integer});
    return static_cast<int>(variables.size()) - 1;
  }
  int add_row(LpRow row) {
    rows.push_back(std::move(row));
    return static_cast<int>(rows.size()) - 1;
  }
  int variable_count() const { return static_cast<int>(variables.size()); }
  int row_count() const { return static_cast<int>(rows.size()); }
};

inline void validate_row(const LpRow& row, int variable_count) {
  if (!std::isfinite(row.rhs)) throw std::invalid_argument("LpRow: non-finite right-hand side");
  for (const auto& [k, a] : row.terms) {
    if (k < 0 || k >= variable_count)
      throw std::invalid_argument("LpRow: variable index " + std::to_string(k) + " out of range");
    if (!std::isfinite(a)) throw std::invalid_argument("LpRow: non-finite coefficient");
  }
}

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "?";
}

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> primal;
  std::vector<double> duals;           // one per row, d(objective)/d(rhs)
  std::vector<double> reduced_costs;   // c_j - y^T A_j per variable
  double objective = 0.0;
  std::vector<int> infeasible_rows;    // rows carrying the phase-1 certificate
  int iterations = 0;
};

struct LpOptions {
  int iteration_limit = 0;  // 0 picks max(20000, 50 * (rows + cols))
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  int refactor_interval = 64;
};

namespace detail {

class BoundedSimplex {
 public:
  BoundedSimplex(const LpModel& model, const LpOptions& opts) : model_(model), opts_(opts) {
    m_ = model.row_count();
    n_ = model.variable_count();
    build();
  }

  LpSolution run() {
    LpSolution out;
    const int limit = opts_.iteration_limit > 0 ? opts_.iteration_limit
                                                : std::max(20000, 50 * (m_ + n_));
    if (!refactor()) return breakdown(out);
    if (!artificials_.empty()) {
      set_phase_costs(true);
      const Outcome o1 = iterate(limit);
      out.iterations = iterations_;
      if (o1 == Outcome::kBreakdown || o1 == Outcome::kLimit) return breakdown(out);
      double infeas = 0.0;
      for (int a : artificials_) infeas += value_[a];
      if (infeas > 1e-7 * (1.0 + rhs_scale_)) {
        out.status = LpStatus::kInfeasible;
        compute_duals();
        for (int r = 0; r < m_; ++r)
          if (std::abs(y_[r]) > 1e-9) out.infeasible_rows.push_back(r);
        return out;
      }
      for (int a : artificials_) {
        upper_[a] = 0.0;
        lower_[a] = 0.0;
        value_[a] = 0.0;
      }
      if (!refactor()) return breakdown(out);
    }
    set_phase_costs(false);
    const Outcome o2 = iterate(limit);
    out.iterations = iterations_;
    if (o2 == Outcome::kBreakdown || o2 == Outcome::kLimit) return breakdown(out);
    if (o2 == Outcome::kUnbounded) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    if (!refactor()) return breakdown(out);
    compute_duals();
    out.status = LpStatus::kOptimal;
    out.primal.assign(value_.begin(), value_.begin() + n_);
    out.duals = y_;
    out.reduced_costs.resize(n_);
    out.objective = 0.0;
    for (int j = 0; j < n_; ++j) {
      out.reduced_costs[j] = cost_[j] - dot_column(j, y_);
      out.objective += cost_[j] * out.primal[j];
    }
    return out;
  }

 private:
  enum class Outcome { kOptimal, kUnbounded, kLimit, kBreakdown };

  LpSolution& breakdown(LpSolution& out) {
    out.status = LpStatus::kIterationLimit;
    out.iterations = iterations_;
    return out;
  }

  void build() {
    const int cols = n_ + m_;
    columns_.assign(cols, {});
    lower_.resize(cols);
    upper_.resize(cols);
    value_.assign(cols, 0.0);
    for (int j = 0; j < n_; ++j) {
      const auto& v = model_.variables[j];
      if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper)
        throw std::invalid_argument("LpModel: inconsistent bounds on variable " +
                                    std::to_string(j));
      if (!std::isfinite(v.lower) && !std::isfinite(v.upper))
        throw std::invalid_argument("LpModel: free variables are not supported");
      lower_[j] = v.lower;
      upper_[j] = v.upper;
      value_[j] = std::isfinite(v.lower) ? v.lower : v.upper;
    }
    rhs_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      const auto& row = model_.rows[r];
      validate_row(row, n_);
      for (const auto& [k, a] : row.terms) {
        if (a != 0.0) columns_[k].emplace_back(r, a);
      }
      rhs_[r] = row.rhs;
      rhs_scale_ = std::max(rhs_scale_, std::abs(row.rhs));
      const int s = n_ + r;
      columns_[s].emplace_back(r, 1.0);
      switch (row.sense) {
        case Sense::kLessEqual:
          lower_[s] = 0.0;
          upper_[s] = kInfinity;
          break;
        case Sense::kGreaterEqual:
          lower_[s] = -kInfinity;
          upper_[s] = 0.0;
          break;
        case Sense::kEqual:
          lower_[s] = 0.0;
          upper_[s] = 0.0;
          break;
      }
    }
    // Initial basis: slacks where they absorb the residual, artificials elsewhere.
    std::vector<double> residual = rhs_;
    for (int j = 0; j < n_; ++j)
      for (const auto& [r, a] : columns_[j]) residual[r] -= a * value_[j];
    basis_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      const int s = n_ + r;
      const double need = residual[r];
      if (need >= lower_[s] - opts_.feasibility_tolerance &&
          need <= upper_[s] + opts_.feasibility_tolerance) {
        basis_[r] = s;
        value_[s] = need;
      } else {
        value_[s] = need < lower_[s] ? lower_[s] : upper_[s];
        const double rest = need - value_[s];
        const int a = static_cast<int>(columns_.size());
        columns_.push_back({{r, rest > 0 ? 1.0 : -1.0}});
        lower_.push_back(0.0);
        upper_.push_back(kInfinity);
        value_.push_back(std::abs(rest));
        artificials_.push_back(a);
        basis_[r] = a;
      }
    }
    total_ = static_cast<int>(columns_.size());
    is_basic_.assign(total_, -1);
    for (int r = 0; r < m_; ++r) is_basic_[basis_[r]] = r;
    cost_.assign(total_, 0.0);
  }

  void set_phase_costs(bool phase1) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    if (phase1) {
      for (int a : artificials_) cost_[a] = -1.0;
    } else {
      for (int j = 0; j < n_; ++j) cost_[j] = model_.variables[j].objective;
    }
    degenerate_run_ = 0;
    bland_ = false;
  }

  double dot_column(int j, const std::vector<double>& y) const {
    double s = 0.0;
    for (const auto& [r, a] : columns_[j]) s += a * y[r];
    return s;
  }

  void compute_duals() {
    y_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double c = cost_[basis_[r]];
      if (c == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int k = 0; k < m_; ++k) y_[k] += c * row[k];
    }
  }

  // Gauss-Jordan inversion of the basis matrix, then x_B = B^{-1}(b - N x_N).
  bool refactor() {
    std::vector<double> mat(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r)
      for (const auto& [row, a] : columns_[basis_[r]])
        mat[static_cast<std::size_t>(row) * m_ + r] = a;
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) binv_[static_cast<std::size_t>(r) * m_ + r] = 1.0;
    for (int c = 0; c < m_; ++c) {
      int piv = -1;
      double best = 1e-11;
      for (int r = c; r < m_; ++r) {
        const double v = std::abs(mat[static_cast<std::size_t>(r) * m_ + c]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (piv < 0) return false;
      if (piv != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(mat[static_cast<std::size_t>(piv) * m_ + k],
                    mat[static_cast<std::size_t>(c) * m_ + k]);
          std::swap(binv_[static_cast<std::size_t>(piv) * m_ + k],
                    binv_[static_cast<std::size_t>(c) * m_ + k]);
        }
      }
      const double inv = 1.0 / mat[static_cast<std::size_t>(c) * m_ + c];
      for (int k = 0; k < m_; ++k) {
        mat[static_cast<std::size_t>(c) * m_ + k] *= inv;
        binv_[static_cast<std::size_t>(c) * m_ + k] *= inv;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = mat[static_cast<std::size_t>(r) * m_ + c];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          mat[static_cast<std::size_t>(r) * m_ + k] -= f * mat[static_cast<std::size_t>(c) * m_ + k];
          binv_[static_cast<std::size_t>(r) * m_ + k] -= f * binv_[static_cast<std::size_t>(c) * m_ + k];
        }
      }
    }
    std::vector<double> resid = rhs_;
    for (int j = 0; j < total_; ++j) {
      if (is_basic_[j] >= 0) continue;
      if (value_[j] == 0.0) continue;
      for (const auto& [r, a] : columns_[j]) resid[r] -= a * value_[j];
    }
    for (int r = 0; r < m_; ++r) {
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      double s = 0.0;
      for (int k = 0; k < m_; ++k) s += row[k] * resid[k];
      value_[basis_[r]] = s;
    }
    since_refactor_ = 0;
    return true;
  }

  Outcome iterate(int limit) {
    std::vector<double> alpha(m_);
    while (true) {
      if (iterations_ >= limit) return Outcome::kLimit;
      compute_duals();
      // Pricing.
      int enter = -1;
      double best = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (is_basic_[j] >= 0 || lower_[j] == upper_[j]) continue;
        const double d = cost_[j] - dot_column(j, y_);
        const bool at_lower = value_[j] <= lower_[j];
        const bool at_upper = value_[j] >= upper_[j];
        double gain = 0.0;
        if (d > opts_.optimality_tolerance && !at_upper) {
          gain = d;
        } else if (d < -opts_.optimality_tolerance && !at_lower) {
          gain = -d;
        }
        if (gain <= 0.0) continue;
        if (bland_) {
          enter = j;
          break;
        }
        if (gain > best) {
          best = gain;
          enter = j;
        }
      }
      if (enter < 0) return Outcome::kOptimal;
      const double d_enter = cost_[enter] - dot_column(enter, y_);
      const double dir = d_enter > 0 ? 1.0 : -1.0;

      std::fill(alpha.begin(), alpha.end(), 0.0);
      for (const auto& [row, a] : columns_[enter]) {
        for (int r = 0; r < m_; ++r) alpha[r] += binv_[static_cast<std::size_t>(r) * m_ + row] * a;
      }

      // Ratio test; x_B moves by -dir * step * alpha.
      double step = upper_[enter] - lower_[enter];
      int leave = -1;
      double leave_pivot = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double rate = -dir * alpha[r];
        if (std::abs(alpha[r]) <= opts_.pivot_tolerance) continue;
        const int k = basis_[r];
        double lim;
        if (rate < 0) {
          if (!std::isfinite(lower_[k])) continue;
          lim = (value_[k] - lower_[k]) / -rate;
        } else {
          if (!std::isfinite(upper_[k])) continue;
          lim = (upper_[k] - value_[k]) / rate;
        }
        lim = std::max(lim, 0.0);
        bool take = false;
        if (lim < step - 1e-12) {
          take = true;
        } else if (lim <= step + 1e-12 && leave >= 0) {
          take = bland_ ? basis_[r] < basis_[leave]
                        : std::abs(alpha[r]) > std::abs(leave_pivot);
        }
        if (take) {
          step = lim;
          leave = r;
          leave_pivot = alpha[r];
        }
      }
      if (!std::isfinite(step)) return Outcome::kUnbounded;
      ++iterations_;

      value_[enter] += dir * step;
      for (int r = 0; r < m_; ++r) value_[basis_[r]] -= dir * step * alpha[r];

      if (step <= 1e-12) {
        if (++degenerate_run_ > 10 * (m_ + n_)) bland_ = true;
      } else {
        degenerate_run_ = 0;
      }

      if (leave < 0) {
        // Bound flip of the entering variable.
        value_[enter] = dir > 0 ? upper_[enter] : lower_[enter];
        continue;
      }
      const int out = basis_[leave];
      const double rate = -dir * alpha[leave];
      value_[out] = rate < 0 ? lower_[out] : upper_[out];
      is_basic_[out] = -1;
      basis_[leave] = enter;
      is_basic_[enter] = leave;

      // Pivot the basis inverse on alpha[leave].
      double* prow = &binv_[static_cast<std::size_t>(leave) * m_];
      const double inv = 1.0 / alpha[leave];
      for (int k = 0; k < m_; ++k) prow[k] *= inv;
      for (int r = 0; r < m_; ++r) {
        if (r == leave || alpha[r] == 0.0) continue;
        double* row = &binv_[static_cast<std::size_t>(r) * m_];
        const double f = alpha[r];
        for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
      }
      if (++since_refactor_ >= opts_.refactor_interval) {
        if (!refactor()) return Outcome::kBreakdown;
      }
    }
  }

  const LpModel& model_;
  LpOptions opts_;
  int m_ = 0;
  int n_ = 0;
  int total_ = 0;
  std::vector<std::vector<std::pair<int, double>>> columns_;
  std::vector<double> lower_, upper_, value_, cost_, rhs_, y_, binv_;
  std::vector<int> basis_, is_basic_, artificials_;
  double rhs_scale_ = 0.0;
  int iterations_ = 0;
  int since_refactor_ = 0;
  int degenerate_run_ = 0;
  bool bland_ = false;
};

}  // namespace detail

/// Solves the continuous relaxation of `model` (integrality flags ignored).
inline LpSolution solve_lp(const LpModel& model, const LpOptions& opts = {}) {
  detail::BoundedSimplex simplex(model, opts);
  return simplex.run();
}

}  // namespace dyncover

#endif  // DYNCOVER_LP_HPP_
