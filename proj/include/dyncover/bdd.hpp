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

// Benders dual decomposition. The subproblem keeps a copy y of the facility
// decisions, restricted to Omega, and relaxes y = x~ with multipliers lambda:
//
//   LSP1(x~, lambda) = max  sum_t sum_j d_j^t z_j^t - sum_t sum_i lambda_i^t (y_i^t - x~_i^t)
//                      s.t. z_j^t <= sum_i a_ij^t y_i^t,  z in [0,1],  y in Omega binary.
//
// For every lambda the optimum gives the valid cut
//   theta <= sum d z_bar - sum lambda (y_bar - x).
// LSP2 searches lambda by subgradient descent.

#ifndef DYNCOVER_BDD_HPP_
#define DYNCOVER_BDD_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dyncover/benders.hpp"
#include "dyncover/milp.hpp"
#include "dyncover/model.hpp"

namespace dyncover {

struct LspSolution {
  Solution y;
  std::vector<std::vector<double>> z;  // [user][period]
  double value = 0.0;
  std::vector<double> lambda;  // per flat variable
  bool optimal = false;        // false when a time limit stopped the solve
};

struct LspOptions {
  double time_limit_seconds = kInfinity;
  int iterations = 30;
};

namespace detail {

inline void check_lambda(const Instance& inst, const std::vector<double>& lambda) {
  if (static_cast<int>(lambda.size()) != inst.variable_count())
    throw std::invalid_argument("lambda must have one entry per (facility, period)");
}

}  // namespace detail

/// Multipliers from the LP duals of the copy rows y = x~, with y relaxed to [0,1].
inline std::vector<double> copy_row_duals(const Instance& inst, const FractionalSolution& x_tilde) {
  const int n = inst.variable_count();
  LpModel lp;
  for (int k = 0; k < n; ++k) lp.add_variable(0, 1, 0);
  std::vector<int> zvar;
  for (int j = 0; j < inst.user_count(); ++j)
    for (int t = 0; t < inst.periods(); ++t) {
      const int z = lp.add_variable(0, 1, inst.demand(j, t));
      LpRow row{{{z, 1.0}}, Sense::kLessEqual, 0.0};
      for (int i : inst.covering(j, t)) row.terms.emplace_back(inst.var(i, t), -1.0);
      lp.add_row(std::move(row));
    }
  for (const DomainRow& r : inst.lower_domain()) lp.add_row({r.terms, r.sense, r.rhs});
  const int first_copy = lp.row_count();
  for (int k = 0; k < n; ++k) lp.add_row({{{k, 1.0}}, Sense::kEqual, x_tilde[k]});
  const LpSolution sol = solve_lp(lp);
  std::vector<double> lambda(n, 0.0);
  if (sol.status != LpStatus::kOptimal) return lambda;
  for (int k = 0; k < n; ++k) lambda[k] = sol.duals[first_copy + k];
  return lambda;
}

/// Exact LSP1 through the MILP engine.
inline LspSolution lsp1(const Instance& inst, const FractionalSolution& x_tilde,
                        const std::vector<double>& lambda, const LspOptions& opts = {}) {
  detail::check_lambda(inst, lambda);
  const int n = inst.variable_count();
  for (std::size_t k = 0; k < x_tilde.size(); ++k)
    if (x_tilde[k] < -1e-9 || x_tilde[k] > 1 + 1e-9)
      throw std::invalid_argument("lsp1: x~ outside [0,1]");
  LpModel m;
  for (int k = 0; k < n; ++k) m.add_variable(0, 1, -lambda[k], true);
  for (int j = 0; j < inst.user_count(); ++j)
    for (int t = 0; t < inst.periods(); ++t) {
      const int z = m.add_variable(0, 1, inst.demand(j, t));
      LpRow row{{{z, 1.0}}, Sense::kLessEqual, 0.0};
      for (int i : inst.covering(j, t)) row.terms.emplace_back(inst.var(i, t), -1.0);
      m.add_row(std::move(row));
    }
  for (const DomainRow& r : inst.lower_domain()) m.add_row({r.terms, r.sense, r.rhs});

  MilpOptions mo;
  mo.time_limit_seconds = opts.time_limit_seconds;
  mo.fractional_events = FractionalEvents::kNone;
  const MilpResult r = solve_milp(std::move(m), {}, mo);
  if (!r.has_incumbent) throw std::runtime_error("lsp1: Omega has no binary point");

  LspSolution out;
  out.lambda = lambda;
  out.optimal = r.status == MilpStatus::kOptimal;
  out.y = Solution(inst.facility_count(), inst.periods());
  for (int k = 0; k < n; ++k) out.y[k] = r.incumbent[k] > 0.5 ? 1 : 0;
  // z at its bound min{1, count}; d > 0 makes that optimal for the fixed y.
  const CoverageCount counts = coverage_counts(inst, out.y);
  out.z.assign(inst.user_count(), std::vector<double>(inst.periods(), 0.0));
  out.value = 0.0;
  for (int j = 0; j < inst.user_count(); ++j)
    for (int t = 0; t < inst.periods(); ++t) {
      out.z[j][t] = counts.counts[j][t] > 0 ? 1.0 : 0.0;
      out.value += inst.demand(j, t) * out.z[j][t];
    }
  for (int k = 0; k < n; ++k) out.value -= lambda[k] * (out.y[k] - x_tilde[k]);
  return out;
}

/// theta <= sum d z_bar - sum lambda y_bar + sum lambda x. Coefficients may be negative.
inline Cut strengthened_cut(const Instance& inst, const std::vector<double>& lambda,
                            const LspSolution& lsp) {
  detail::check_lambda(inst, lambda);
  Cut cut;
  cut.variant = GammaVariant::kB1;
  for (int j = 0; j < inst.user_count(); ++j)
    for (int t = 0; t < inst.periods(); ++t) cut.constant += inst.demand(j, t) * lsp.z[j][t];
  for (int k = 0; k < inst.variable_count(); ++k) {
    cut.constant -= lambda[k] * lsp.y[k];
    if (lambda[k] != 0.0) cut.coefficients.emplace_back(k, lambda[k]);
  }
  return cut;
}

struct Lsp2Result {
  LspSolution best;
  Cut cut;
  std::vector<double> values;  // LSP1 value per iteration
};

/// Subgradient descent on lambda from `lambda0` (zero if empty). The step is
/// (value - fractional coverage of x~) / ||g||^2, floored at 1e-3 (1 + |value|).
inline Lsp2Result lsp2(const Instance& inst, const FractionalSolution& x_tilde, int iterations,
                       std::vector<double> lambda0 = {}, const LspOptions& opts = {}) {
  if (iterations < 1) throw std::invalid_argument("lsp2: iterations must be >= 1");
  const int n = inst.variable_count();
  std::vector<double> lambda = lambda0.empty() ? std::vector<double>(n, 0.0) : std::move(lambda0);
  detail::check_lambda(inst, lambda);
  const double target = fractional_coverage(inst, x_tilde);
  Lsp2Result out;
  for (int it = 0; it < iterations; ++it) {
    LspSolution cur = lsp1(inst, x_tilde, lambda, opts);
    out.values.push_back(cur.value);
    const bool better = it == 0 || cur.value < out.best.value;
    if (better) out.best = cur;
    double norm2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double g = x_tilde[k] - cur.y[k];
      norm2 += g * g;
    }
    if (norm2 < 1e-12) break;  // y_bar = x~: no multiplier can do better
    const double step = std::max(cur.value - target, 1e-3 * (1.0 + std::abs(cur.value))) / norm2;
    for (int k = 0; k < n; ++k) lambda[k] -= step * (x_tilde[k] - cur.y[k]);
  }
  out.cut = strengthened_cut(inst, out.best.lambda, out.best);
  return out;
}

}  // namespace dyncover

#endif  // DYNCOVER_BDD_HPP_
