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

// Branch-and-Benders-cut drivers and the monolithic baseline.
//
// The main problem holds x (binary, flat period-major, indices [0, n)) and
// one theta per scope: a single aggregate theta or one theta^t per period.
// Optimality cuts enter through the MILP callback.

#ifndef DYNCOVER_SOLVERS_HPP_
#define DYNCOVER_SOLVERS_HPP_

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <optional>
#include <string>
#include <vector>

#include "dyncover/bdd.hpp"
#include "dyncover/benders.hpp"
#include "dyncover/greedy.hpp"
#include "dyncover/log.hpp"
#include "dyncover/milp.hpp"
#include "dyncover/preprocess.hpp"
#include "dyncover/solve_result.hpp"

namespace dyncover {

struct AbbcFeatures {
  bool multicut = true;
  bool pareto = true;
  bool partial = true;
  bool warmstart = true;
  bool root_only_fractional = true;
  bool bdd = false;  // LSP2 cuts at fractional root candidates
};

struct SolverOptions {
  double time_limit_seconds = kInfinity;
  long node_limit = std::numeric_limits<long>::max();
  GammaVariant cuts = GammaVariant::kParetoB1;  // used by solve_abbc; kB1 if pareto is off
  int bdd_iterations = 30;
};

/// x and theta variables, Omega rows and the partial-Benders objective terms.
struct MainProblem {
  LpModel model;
  std::vector<int> theta;  // size 1 (aggregate) or T
  std::vector<int> singles;
  PartialBendersPlan plan;
  int n = 0;
  bool multi = false;  // one theta per period, even when T = 1

  int theta_var(const Cut& c) const { return c.theta == kAggregateTheta ? theta[0] : theta[c.theta]; }
};

inline MainProblem build_main_problem(const Instance& inst, bool multicut, bool partial) {
  MainProblem mp;
  mp.n = inst.variable_count();
  mp.multi = multicut;
  mp.singles = singles_set(inst);
  mp.plan = partial_plan(inst, partial ? mp.singles : std::vector<int>{});
  for (int k = 0; k < mp.n; ++k) mp.model.add_variable(0, 1, mp.plan.folded[k], true);
  std::vector<bool> kept(inst.user_count(), true);
  for (int j : mp.plan.retained) kept[j] = false;
  std::vector<double> scope(multicut ? inst.periods() : 1, 0.0);
  for (int j = 0; j < inst.user_count(); ++j)
    if (kept[j])
      for (int t = 0; t < inst.periods(); ++t) scope[multicut ? t : 0] += inst.demand(j, t);
  for (double ub : scope) mp.theta.push_back(mp.model.add_variable(0, ub, 1.0));
  for (const DomainRow& r : inst.lower_domain()) mp.model.add_row({r.terms, r.sense, r.rhs});
  return mp;
}

/// Per-scope subproblem values of an integer x: what the thetas should equal.
inline std::vector<double> theta_values(const Instance& inst, const MainProblem& mp, const Solution& x) {
  std::vector<double> out(mp.theta.size(), 0.0);
  for (int t = 0; t < inst.periods(); ++t) {
    double v = period_coverage(inst, x, t);
    for (int i = 0; i < inst.facility_count(); ++i) v -= mp.plan.folded[inst.var(i, t)] * x(i, t);
    out[mp.multi ? t : 0] += v;
  }
  return out;
}

inline WarmStart warm_start_of(const Instance& inst, const MainProblem& mp, const Solution& x) {
  std::vector<double> v(mp.model.variable_count(), 0.0);
  for (int k = 0; k < mp.n; ++k) v[k] = x[k];
  const auto th = theta_values(inst, mp, x);
  for (std::size_t s = 0; s < th.size(); ++s) v[mp.theta[s]] = th[s];
  return WarmStart{std::move(v), coverage(inst, x)};
}

/// Cut pool with duplicate detection (coefficients and constant within 1e-9).
class CutPool {
 public:
  bool insert(const Cut& c) {
    std::vector<int> support;
    for (const auto& [k, a] : c.coefficients) support.push_back(k);
    auto& bucket = buckets_[{c.theta, std::move(support)}];
    for (const Cut& other : bucket)
      if (same_cut(other, c)) return false;
    bucket.push_back(c);
    all_.push_back(c);
    return true;
  }
  const std::vector<Cut>& cuts() const { return all_; }

 private:
  std::map<std::pair<int, std::vector<int>>, std::vector<Cut>> buckets_;
  std::vector<Cut> all_;
};

/// Generates optimality cuts for candidates of a main problem and keeps the core point.
class CutGenerator {
 public:
  CutGenerator(const Instance& inst, const MainProblem& mp, GammaVariant variant,
               std::optional<CorePoint> core)
      : inst_(inst), mp_(mp), variant_(variant), core_(std::move(core)) {}

  /// Cuts for point x (flat values); scope-aggregated to match the main problem.
  std::vector<Cut> cuts_at(const FractionalSolution& x) const {
    GammaVariant v = variant_;
    const CorePoint* core = nullptr;
    if (v == GammaVariant::kParetoB1) {
      if (core_ && core_->updates > 0) {
        core = &*core_;
      } else {
        v = GammaVariant::kB1;  // no interior-like core point yet
      }
    }
    if (mp_.multi)
      return multi_cuts(inst_, x, v, mp_.singles, core, mp_.plan.retained);
    return {single_cut(inst_, x, v, mp_.singles, core, mp_.plan.retained)};
  }

  void observe_integer(const Solution& x) {
    if (variant_ != GammaVariant::kParetoB1) return;
    if (!core_) {
      core_ = make_core_point(x);
    } else {
      core_ = update_core_point(std::move(*core_), x);
    }
  }

  const std::optional<CorePoint>& core() const { return core_; }

 private:
  const Instance& inst_;
  const MainProblem& mp_;
  GammaVariant variant_;
  std::optional<CorePoint> core_;
};

inline FractionalSolution x_part(const Instance& inst, std::span<const double> values) {
  FractionalSolution x(inst.facility_count(), inst.periods());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::clamp(values[k], 0.0, 1.0);
  return x;
}

inline Solution rounded_x(const Instance& inst, std::span<const double> values) {
  Solution x(inst.facility_count(), inst.periods());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = values[k] > 0.5 ? 1 : 0;
  return x;
}

/// Adds every cut violated at `values` by more than `tol`; returns the number added.
inline int add_violated(const std::vector<Cut>& cuts, const MainProblem& mp, CutPool& pool,
                        std::span<const double> values, double tol,
                        const std::function<void(LpRow)>& add) {
  int added = 0;
  for (const Cut& c : cuts) {
    const double theta = values[mp.theta_var(c)];
    if (theta <= evaluate_cut(c, values) + tol) continue;
    if (!pool.insert(c)) continue;
    add(cut_row(c, mp.theta_var(c)));
    ++added;
  }
  return added;
}

namespace detail {

inline SolveResult finish(const Instance& original, const MilpResult& r, int n, std::string method,
                          std::string features, double seconds) {
  SolveResult out;
  out.instance = original.name();
  out.method = std::move(method);
  out.features = std::move(features);
  out.status = r.status;
  out.nodes = r.nodes;
  out.lazy_cuts = r.lazy_cuts;
  out.user_cuts = r.user_cuts;
  out.wall_seconds = seconds;
  out.bound = r.bound;
  if (r.has_incumbent) {
    Solution x(original.facility_count(), original.periods());
    for (int k = 0; k < n; ++k) x[k] = r.incumbent[k] > 0.5 ? 1 : 0;
    out.objective = coverage(original, x);
    out.solution = std::move(x);
    if (out.status == MilpStatus::kOptimal) out.bound = std::max(out.bound, out.objective);
    out.gap = relative_gap(out.bound, out.objective);
  } else {
    out.gap = kInfinity;
  }
  return out;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct BbcConfig {
  bool multicut = true;
  bool partial = false;
  GammaVariant variant = GammaVariant::kB1;
  bool greedy_warmstart = false;
  std::optional<Solution> warm;  // overrides the greedy warm start
  FractionalEvents fractional = FractionalEvents::kRoot;
  bool bdd = false;
  // Appends rows (and variables) to the main problem after the x/theta block.
  std::function<void(LpModel&)> extend;
};

// Shared Benders loop; also used for neighborhood subproblems through `extend`.
inline MilpResult run_bbc_milp(const Instance& inst, const BbcConfig& cfg, const SolverOptions& opts,
                               int* n_out = nullptr) {
  MainProblem mp = build_main_problem(inst, cfg.multicut, cfg.partial);
  if (cfg.extend) cfg.extend(mp.model);
  if (n_out) *n_out = mp.n;
  std::optional<Solution> greedy;
  if (cfg.greedy_warmstart || cfg.variant == GammaVariant::kParetoB1) greedy = greedy_warmstart(inst);
  std::optional<CorePoint> core;
  if (greedy && cfg.variant == GammaVariant::kParetoB1) core = make_core_point(*greedy);
  CutGenerator gen(inst, mp, cfg.variant, core);
  CutPool pool;
  MilpOptions mo;
  mo.time_limit_seconds = opts.time_limit_seconds;
  mo.node_limit = opts.node_limit;
  mo.fractional_events = cfg.fractional;

  auto callback = [&](CandidateEvent& ev) {
    auto add = [&](LpRow row) { ev.sink.add_row(std::move(row)); };
    if (ev.kind == EventKind::kIntegerCandidate) {
      const Solution x = rounded_x(inst, ev.values);
      gen.observe_integer(x);
      add_violated(gen.cuts_at(to_fractional(x)), mp, pool, ev.values, mo.cut_violation_tolerance, add);
      return;
    }
    const FractionalSolution x = x_part(inst, ev.values);
    int added = add_violated(gen.cuts_at(x), mp, pool, ev.values, mo.cut_violation_tolerance, add);
    if (cfg.bdd && added == 0 && ev.at_root) {
      // Bounds folded x-terms plus every theta by the full-coverage cut.
      const Lsp2Result l = lsp2(inst, x, opts.bdd_iterations);
      LpRow row;
      for (int th : mp.theta) row.terms.emplace_back(th, 1.0);
      std::vector<double> coef(mp.n, 0.0);
      for (int k = 0; k < mp.n; ++k) coef[k] = mp.plan.folded[k];
      for (const auto& [k, a] : l.cut.coefficients) coef[k] -= a;
      for (int k = 0; k < mp.n; ++k)
        if (coef[k] != 0.0) row.terms.emplace_back(k, coef[k]);
      row.sense = Sense::kLessEqual;
      row.rhs = l.cut.constant;
      std::vector<double> v(ev.values.begin(), ev.values.end());
      if (row.violation(v) > mo.cut_violation_tolerance) add(std::move(row));
    }
  };

  std::optional<WarmStart> warm;
  if (cfg.warm) {
    warm = warm_start_of(inst, mp, *cfg.warm);
  } else if (cfg.greedy_warmstart && greedy) {
    warm = warm_start_of(inst, mp, *greedy);
  }
  if (warm) warm->values.resize(mp.model.variable_count(), 0.0);
  return solve_milp(std::move(mp.model), callback, mo, warm);
}

inline SolveResult run_bbc(const Instance& original, const Instance& inst, const BbcConfig& cfg,
                           const SolverOptions& opts, std::string method, std::string features) {
  const auto t0 = std::chrono::steady_clock::now();
  int n = 0;
  const MilpResult r = run_bbc_milp(inst, cfg, opts, &n);
  log_info(method, ": status ", to_string(r.status), " objective ", r.objective, " bound ", r.bound,
           " nodes ", r.nodes);
  return finish(original, r, n, std::move(method), std::move(features), seconds_since(t0));
}

}  // namespace detail

/// Greedy heuristic as a method; the bound is the total demand. Reports
/// kInfeasible when the empty solution is outside Omega.
inline SolveResult solve_greedy(const Instance& inst) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult out;
  out.instance = inst.name();
  out.method = "greedy";
  out.features = "none";
  out.solution = greedy_warmstart(inst);
  out.bound = inst.total_demand();
  if (out.solution) {
    out.status = MilpStatus::kFeasible;
    out.objective = coverage(inst, *out.solution);
    out.gap = relative_gap(out.bound, out.objective);
  } else {
    out.status = MilpStatus::kInfeasible;
    out.gap = kInfinity;
  }
  out.wall_seconds = detail::seconds_since(t0);
  return out;
}

/// Unaccelerated: one theta, B1 cuts at every integer and fractional candidate, no warm start.
inline SolveResult solve_ubbc(const Instance& inst, const SolverOptions& opts = {}) {
  detail::BbcConfig cfg;
  cfg.multicut = false;
  cfg.fractional = FractionalEvents::kAll;
  return detail::run_bbc(inst, inst, cfg, opts, "ubbc", "b1");
}

inline std::string features_label(const AbbcFeatures& f) {
  std::string s;
  auto put = [&](bool on, const char* name) {
    if (!on) return;
    if (!s.empty()) s += "+";
    s += name;
  };
  put(f.multicut, "multicut");
  put(f.pareto, "pareto");
  put(f.partial, "partial");
  put(f.warmstart, "warmstart");
  put(f.root_only_fractional, "rootcuts");
  put(f.bdd, "bdd");
  return s.empty() ? "none" : s;
}

/// Accelerated: exact preprocessing plus the selected features.
inline SolveResult solve_abbc(const Instance& inst, const AbbcFeatures& features = {},
                              const SolverOptions& opts = {}) {
  const Instance reduced = preprocess(inst).first;
  GammaVariant v = features.pareto ? GammaVariant::kParetoB1 : opts.cuts;
  if (!features.pareto && v == GammaVariant::kParetoB1) v = GammaVariant::kB1;
  detail::BbcConfig cfg;
  cfg.multicut = features.multicut;
  cfg.partial = features.partial;
  cfg.variant = v;
  cfg.greedy_warmstart = features.warmstart;
  cfg.fractional = features.root_only_fractional ? FractionalEvents::kRoot : FractionalEvents::kAll;
  cfg.bdd = features.bdd;
  return detail::run_bbc(inst, reduced, cfg, opts, "abbc", features_label(features));
}

/// Monolithic model: x binary, z_j^t in [0,1] with z_j^t <= sum_i a_ij^t x_i^t.
inline SolveResult solve_bc(const Instance& inst, const SolverOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  LpModel m;
  const int n = inst.variable_count();
  for (int k = 0; k < n; ++k) m.add_variable(0, 1, 0, true);
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
  mo.node_limit = opts.node_limit;
  mo.fractional_events = FractionalEvents::kNone;
  const MilpResult r = solve_milp(std::move(m), {}, mo);
  return detail::finish(inst, r, n, "bc", "monolithic", detail::seconds_since(t0));
}

}  // namespace dyncover

#endif  // DYNCOVER_SOLVERS_HPP_
