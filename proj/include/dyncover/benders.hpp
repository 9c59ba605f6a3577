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

// Benders optimality cuts for the covering subproblem.
//
// For a candidate x and period t the subproblem dual is solved by inspection
// from the coverage counts I_j^t(x). Users in the set Gamma^t contribute
// d_j^t a_ij^t to the coefficient of x_i^t; the others contribute d_j^t to the
// constant:
//
//   sum_i (sum_{j in Gamma^t} d_j^t a_ij^t) x_i^t + sum_{j not in Gamma^t} d_j^t >= theta^t
//
// The variants differ only on users with I_j^t = 1.

#ifndef DYNCOVER_BENDERS_HPP_
#define DYNCOVER_BENDERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dyncover/lp.hpp"
#include "dyncover/model.hpp"

namespace dyncover {

enum class GammaVariant { kB0, kB1, kB2, kParetoB1 };

inline const char* to_string(GammaVariant v) {
  switch (v) {
    case GammaVariant::kB0:
      return "b0";
    case GammaVariant::kB1:
      return "b1";
    case GammaVariant::kB2:
      return "b2";
    case GammaVariant::kParetoB1:
      return "pareto";
  }
  return "?";
}

inline constexpr int kAggregateTheta = -1;

struct Cut {
  int theta = kAggregateTheta;  // period for a multi-cut
  std::vector<std::pair<int, double>> coefficients;  // (flat variable, coef), sorted, nonzero
  double constant = 0.0;
  GammaVariant variant = GammaVariant::kB1;
  std::uint64_t source = 0;  // hash of the generating point
};

struct DualPair {
  double pi = 0.0;
  double sigma = 0.0;
};

/// Dual values indexed [user][period].
struct DualInspection {
  std::vector<std::vector<DualPair>> duals;
};

struct CorePoint {
  FractionalSolution x;
  int updates = 0;
};

struct PartialBendersPlan {
  std::vector<int> retained;
  std::vector<double> folded;  // per flat variable
};

namespace detail {

inline constexpr double kCountTol = 1e-9;

inline std::vector<bool> mask_of(const std::vector<int>& users, int n) {
  std::vector<bool> m(n, false);
  for (int j : users) {
    if (j < 0 || j >= n) throw std::invalid_argument("user index out of range");
    m[j] = true;
  }
  return m;
}

inline std::uint64_t hash_point(const FractionalSolution& x) {
  std::uint64_t h = 1469598103934665603ULL;
  for (double v : x.values()) {
    std::uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(v));
    h = (h ^ bits) * 1099511628211ULL;
  }
  return h;
}

inline void check_dims(const Instance& inst, const FractionalSolution& x) {
  if (x.facilities() != inst.facility_count() || x.periods() != inst.periods())
    throw std::invalid_argument("solution dimensions do not match instance");
}

inline double period_count(const Instance& inst, const FractionalSolution& x, int j, int t) {
  double s = 0.0;
  for (int i : inst.covering(j, t)) s += x(i, t);
  return s;
}

// Membership of user j in Gamma^t.
inline bool in_gamma(double count, bool single, GammaVariant variant, double core_count) {
  const bool below = count < 1.0 - kCountTol;
  const bool tie = std::abs(count - 1.0) <= kCountTol;
  switch (variant) {
    case GammaVariant::kB0:
      return below;
    case GammaVariant::kB2:
      return below || tie;
    case GammaVariant::kB1:
      return below || (tie && single);
    case GammaVariant::kParetoB1:
      if (below) return true;
      if (!tie) return false;
      if (core_count < 1.0 - kCountTol) return true;
      if (core_count > 1.0 + kCountTol) return false;
      return single;  // double tie: B1 rule
  }
  return false;
}

}  // namespace detail

/// Gamma^t(x) as a sorted user list. `retained` users (partial Benders) never enter.
inline std::vector<int> gamma_set(const Instance& inst, const FractionalSolution& x, int t,
                                  GammaVariant variant, const std::vector<int>& singles,
                                  const CorePoint* core = nullptr,
                                  const std::vector<int>& retained = {}) {
  detail::check_dims(inst, x);
  if (variant == GammaVariant::kParetoB1 && core == nullptr)
    throw std::invalid_argument("gamma_set: Pareto cuts need a core point");
  const auto single = detail::mask_of(singles, inst.user_count());
  const auto skip = detail::mask_of(retained, inst.user_count());
  std::vector<int> out;
  for (int j = 0; j < inst.user_count(); ++j) {
    if (skip[j]) continue;
    const double c = detail::period_count(inst, x, j, t);
    const double cc = core ? detail::period_count(inst, core->x, j, t) : 0.0;
    if (detail::in_gamma(c, single[j], variant, cc)) out.push_back(j);
  }
  return out;
}

inline std::vector<int> gamma_set(const Instance& inst, const Solution& x, int t,
                                  GammaVariant variant, const std::vector<int>& singles,
                                  const CorePoint* core = nullptr,
                                  const std::vector<int>& retained = {}) {
  return gamma_set(inst, to_fractional(x), t, variant, singles, core, retained);
}

namespace detail {

inline Cut period_cut(const Instance& inst, const FractionalSolution& x, int t,
                      GammaVariant variant, const std::vector<bool>& single,
                      const std::vector<bool>& skip, const CorePoint* core, std::uint64_t source) {
  std::vector<double> coef(inst.facility_count(), 0.0);
  Cut cut;
  cut.theta = t;
  cut.variant = variant;
  cut.source = source;
  for (int j = 0; j < inst.user_count(); ++j) {
    if (skip[j]) continue;
    const double c = period_count(inst, x, j, t);
    const double cc = core ? period_count(inst, core->x, j, t) : 0.0;
    const double d = inst.demand(j, t);
    if (in_gamma(c, single[j], variant, cc)) {
      for (int i : inst.covering(j, t)) coef[i] += d;
    } else {
      cut.constant += d;
    }
  }
  for (int i = 0; i < inst.facility_count(); ++i)
    if (coef[i] != 0.0) cut.coefficients.emplace_back(inst.var(i, t), coef[i]);
  return cut;
}

}  // namespace detail

/// The cut of period t alone.
inline Cut period_cut(const Instance& inst, const FractionalSolution& x, int t,
                      GammaVariant variant, const std::vector<int>& singles,
                      const CorePoint* core = nullptr, const std::vector<int>& retained = {}) {
  detail::check_dims(inst, x);
  if (t < 0 || t >= inst.periods()) throw std::invalid_argument("period_cut: bad period");
  if (variant == GammaVariant::kParetoB1 && core == nullptr)
    throw std::invalid_argument("period_cut: Pareto cuts need a core point");
  return detail::period_cut(inst, x, t, variant, detail::mask_of(singles, inst.user_count()),
                            detail::mask_of(retained, inst.user_count()), core,
                            detail::hash_point(x));
}

/// One cut per period.
inline std::vector<Cut> multi_cuts(const Instance& inst, const FractionalSolution& x,
                                   GammaVariant variant, const std::vector<int>& singles,
                                   const CorePoint* core = nullptr,
                                   const std::vector<int>& retained = {}) {
  detail::check_dims(inst, x);
  if (variant == GammaVariant::kParetoB1 && core == nullptr)
    throw std::invalid_argument("multi_cuts: Pareto cuts need a core point");
  const auto single = detail::mask_of(singles, inst.user_count());
  const auto skip = detail::mask_of(retained, inst.user_count());
  const std::uint64_t source = detail::hash_point(x);
  std::vector<Cut> cuts;
  for (int t = 0; t < inst.periods(); ++t)
    cuts.push_back(detail::period_cut(inst, x, t, variant, single, skip, core, source));
  return cuts;
}

inline std::vector<Cut> multi_cuts(const Instance& inst, const Solution& x, GammaVariant variant,
                                   const std::vector<int>& singles, const CorePoint* core = nullptr,
                                   const std::vector<int>& retained = {}) {
  return multi_cuts(inst, to_fractional(x), variant, singles, core, retained);
}

/// The aggregate cut: the sum of the per-period cuts.
inline Cut single_cut(const Instance& inst, const FractionalSolution& x, GammaVariant variant,
                      const std::vector<int>& singles, const CorePoint* core = nullptr,
                      const std::vector<int>& retained = {}) {
  Cut out;
  out.variant = variant;
  // Variables are period-major, so concatenating the period cuts keeps them sorted.
  for (const Cut& c : multi_cuts(inst, x, variant, singles, core, retained)) {
    out.coefficients.insert(out.coefficients.end(), c.coefficients.begin(), c.coefficients.end());
    out.constant += c.constant;
    out.source = c.source;
  }
  return out;
}

inline Cut single_cut(const Instance& inst, const Solution& x, GammaVariant variant,
                      const std::vector<int>& singles, const CorePoint* core = nullptr,
                      const std::vector<int>& retained = {}) {
  return single_cut(inst, to_fractional(x), variant, singles, core, retained);
}

/// Cut left-hand side at x (flat values, period-major).
inline double evaluate_cut(const Cut& cut, std::span<const double> x) {
  double s = cut.constant;
  for (const auto& [k, a] : cut.coefficients) s += a * x[k];
  return s;
}

inline double evaluate_cut(const Cut& cut, const FractionalSolution& x) {
  return evaluate_cut(cut, x.values());
}

inline double evaluate_cut(const Cut& cut, const Solution& x) {
  return evaluate_cut(cut, to_fractional(x));
}

/// Coefficient of (i,t), zero if absent.
inline double cut_coefficient(const Cut& cut, int flat_index) {
  auto it = std::lower_bound(cut.coefficients.begin(), cut.coefficients.end(),
                             std::make_pair(flat_index, -kInfinity));
  return it != cut.coefficients.end() && it->first == flat_index ? it->second : 0.0;
}

inline bool same_cut(const Cut& a, const Cut& b, double tol = 1e-9) {
  if (a.theta != b.theta || a.coefficients.size() != b.coefficients.size()) return false;
  if (std::abs(a.constant - b.constant) > tol) return false;
  for (std::size_t k = 0; k < a.coefficients.size(); ++k) {
    if (a.coefficients[k].first != b.coefficients[k].first) return false;
    if (std::abs(a.coefficients[k].second - b.coefficients[k].second) > tol) return false;
  }
  return true;
}

/// Row form  sum coef x - theta >= -constant, with theta at `theta_var`.
inline LpRow cut_row(const Cut& cut, int theta_var) {
  LpRow row;
  row.terms = cut.coefficients;
  row.terms.emplace_back(theta_var, -1.0);
  row.sense = Sense::kGreaterEqual;
  row.rhs = -cut.constant;
  return row;
}

/// Pointwise Pareto-optimal duals for candidate x and core point.
inline DualInspection pareto_dual(const Instance& inst, const FractionalSolution& x,
                                  const CorePoint& core, const std::vector<int>& singles = {}) {
  detail::check_dims(inst, x);
  const auto single = detail::mask_of(singles, inst.user_count());
  DualInspection out;
  out.duals.assign(inst.user_count(), std::vector<DualPair>(inst.periods()));
  for (int j = 0; j < inst.user_count(); ++j) {
    for (int t = 0; t < inst.periods(); ++t) {
      const double c = detail::period_count(inst, x, j, t);
      const double cc = detail::period_count(inst, core.x, j, t);
      const double d = inst.demand(j, t);
      const bool pi_full =
          detail::in_gamma(c, single[j], GammaVariant::kParetoB1, cc);
      out.duals[j][t] = pi_full ? DualPair{d, 0.0} : DualPair{0.0, d};
    }
  }
  return out;
}

inline DualInspection pareto_dual(const Instance& inst, const Solution& x, const CorePoint& core,
                                  const std::vector<int>& singles = {}) {
  return pareto_dual(inst, to_fractional(x), core, singles);
}

inline CorePoint make_core_point(const Solution& x) { return CorePoint{to_fractional(x), 0}; }

/// Averages the core point with a candidate.
inline CorePoint update_core_point(CorePoint core, const FractionalSolution& candidate) {
  if (candidate.facilities() != core.x.facilities() || candidate.periods() != core.x.periods())
    throw std::invalid_argument("update_core_point: dimension mismatch");
  for (std::size_t k = 0; k < candidate.size(); ++k)
    core.x[k] = 0.5 * (core.x[k] + candidate[k]);
  ++core.updates;
  return core;
}

inline CorePoint update_core_point(CorePoint core, const Solution& candidate) {
  return update_core_point(std::move(core), to_fractional(candidate));
}

/// Keeps `retained` users in the main problem through their objective term.
inline PartialBendersPlan partial_plan(const Instance& inst, const std::vector<int>& retained) {
  PartialBendersPlan plan;
  plan.retained = retained;
  std::sort(plan.retained.begin(), plan.retained.end());
  plan.retained.erase(std::unique(plan.retained.begin(), plan.retained.end()),
                      plan.retained.end());
  plan.folded.assign(inst.variable_count(), 0.0);
  for (int j : plan.retained) {
    if (j < 0 || j >= inst.user_count())
      throw std::invalid_argument("partial_plan: user index out of range");
    for (int t = 0; t < inst.periods(); ++t)
      for (int i : inst.covering(j, t)) plan.folded[inst.var(i, t)] += inst.demand(j, t);
  }
  return plan;
}

}  // namespace dyncover

#endif  // DYNCOVER_BENDERS_HPP_
