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

// Local branching on top of the multi-cut Benders main problem.
//
// Distances use the per-period metric: x is within kappa of x~ when every
// period differs in at most kappa entries. Each integer candidate x~ of the
// main problem starts a chain of restricted subproblems (best point within
// kappa = 2); explored neighborhoods are then removed from the main problem,
// either by big-M rows on binaries delta^t (SepD) or by branching into T
// disjoint children (SepB).

#ifndef DYNCOVER_LOCAL_BRANCHING_HPP_
#define DYNCOVER_LOCAL_BRANCHING_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dyncover/benders.hpp"
#include "dyncover/greedy.hpp"
#include "dyncover/log.hpp"
#include "dyncover/milp.hpp"
#include "dyncover/model.hpp"
#include "dyncover/preprocess.hpp"
#include "dyncover/solve_result.hpp"
#include "dyncover/solvers.hpp"

namespace dyncover {

namespace detail {

inline void check_same_dims(const Solution& a, const Solution& b) {
  if (a.facilities() != b.facilities() || a.periods() != b.periods())
    throw std::invalid_argument("distance: dimension mismatch");
}

}  // namespace detail

inline int hamming_distance(const Solution& x, const Solution& x_tilde) {
  detail::check_same_dims(x, x_tilde);
  int d = 0;
  for (std::size_t k = 0; k < x.size(); ++k) d += x[k] != x_tilde[k];
  return d;
}

inline std::vector<int> per_period_distance(const Solution& x, const Solution& x_tilde) {
  detail::check_same_dims(x, x_tilde);
  std::vector<int> d(x.periods(), 0);
  for (int t = 0; t < x.periods(); ++t)
    for (int i = 0; i < x.facilities(); ++i) d[t] += x(i, t) != x_tilde(i, t);
  return d;
}

/// max_t of the per-period distances; 0 when T = 0.
inline int per_period_metric(const Solution& x, const Solution& x_tilde) {
  const auto d = per_period_distance(x, x_tilde);
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

/// Distance to x~ in period t as `constant + terms . x` (flat variables).
struct DistanceExpr {
  std::vector<std::pair<int, double>> terms;
  double constant = 0.0;
};

inline DistanceExpr distance_expr(const Solution& x_tilde, int t) {
  DistanceExpr e;
  for (int i = 0; i < x_tilde.facilities(); ++i) {
    const int k = t * x_tilde.facilities() + i;
    if (x_tilde(i, t)) {
      e.constant += 1;
      e.terms.emplace_back(k, -1.0);
    } else {
      e.terms.emplace_back(k, 1.0);
    }
  }
  return e;
}

/// Row `dist^t(x) sense rhs`.
inline LpRow distance_row(const Solution& x_tilde, int t, Sense sense, double rhs) {
  DistanceExpr e = distance_expr(x_tilde, t);
  return LpRow{std::move(e.terms), sense, rhs - e.constant};
}

enum class MoveKind { kAdd, kAdd2, kSwap };

struct NeighborhoodMove {
  MoveKind kind = MoveKind::kAdd;
  int period = 0;
  int add = -1;
  int add2 = -1;    // second facility for kAdd2
  int remove = -1;  // for kSwap
  friend bool operator==(const NeighborhoodMove&, const NeighborhoodMove&) = default;
};

/// Improving-type moves within per-period distance 2: per period, all single
/// adds, then pairs of adds, then swaps. Pure removals are left out.
inline std::vector<NeighborhoodMove> enumerate_moves(const Instance& inst, const Solution& x_tilde) {
  std::vector<NeighborhoodMove> moves;
  for (int t = 0; t < inst.periods(); ++t) {
    std::vector<int> open, closed;
    for (int i = 0; i < inst.facility_count(); ++i) (x_tilde(i, t) ? open : closed).push_back(i);
    for (int i : closed) moves.push_back({MoveKind::kAdd, t, i});
    for (std::size_t a = 0; a < closed.size(); ++a)
      for (std::size_t b = a + 1; b < closed.size(); ++b)
        moves.push_back({MoveKind::kAdd2, t, closed[a], closed[b]});
    for (int r : open)
      for (int i : closed) moves.push_back({MoveKind::kSwap, t, i, -1, r});
  }
  return moves;
}

inline Solution apply_move(Solution x, const NeighborhoodMove& m) {
  x(m.add, m.period) = 1;
  if (m.add2 >= 0) x(m.add2, m.period) = 1;
  if (m.remove >= 0) x(m.remove, m.period) = 0;
  return x;
}

// Separation ----------------------------------------------------------------

/// Big-M rows removing {x : dist^t(x) <= kappa for all t}. Row t reads
/// dist^t(x) + (kappa+1) delta^t >= kappa+1 with delta^t at index
/// first_delta + t, plus sum_t delta^t <= T-1. kappa = 0 gives one no-good row.
struct SepDBlock {
  std::vector<LpRow> rows;
  int delta_count = 0;
};

inline SepDBlock sepd_block(const Solution& x_tilde, int kappa, int first_delta) {
  if (kappa < 0) throw std::invalid_argument("sepd_block: kappa must be >= 0");
  SepDBlock b;
  const int T = x_tilde.periods();
  if (kappa == 0) {
    LpRow row{{}, Sense::kGreaterEqual, 1.0};
    for (int t = 0; t < T; ++t) {
      DistanceExpr e = distance_expr(x_tilde, t);
      row.terms.insert(row.terms.end(), e.terms.begin(), e.terms.end());
      row.rhs -= e.constant;
    }
    b.rows.push_back(std::move(row));
    return b;
  }
  b.delta_count = T;
  LpRow budget{{}, Sense::kLessEqual, static_cast<double>(T - 1)};
  for (int t = 0; t < T; ++t) {
    LpRow row = distance_row(x_tilde, t, Sense::kGreaterEqual, kappa + 1.0);
    row.terms.emplace_back(first_delta + t, kappa + 1.0);
    b.rows.push_back(std::move(row));
    budget.terms.emplace_back(first_delta + t, 1.0);
  }
  b.rows.push_back(std::move(budget));
  return b;
}

/// Adds a SepD block to anything with add_variable/add_row (LpModel, CutSink).
template <typename Target>
void append_sepd(Target& target, const Solution& x_tilde, int kappa) {
  int first = -1;
  const int count = kappa == 0 ? 0 : x_tilde.periods();
  for (int t = 0; t < count; ++t) {
    const int k = target.add_variable(0, 1, 0, true);
    if (t == 0) first = k;
  }
  for (LpRow& r : sepd_block(x_tilde, kappa, first).rows) target.add_row(std::move(r));
}

/// Local rows of the T SepB children. Child t' has dist^{t'} >= kappa+1 and
/// dist^t <= kappa for t < t'.
inline std::vector<std::vector<LpRow>> sepb_branches(const Solution& x_tilde, int kappa) {
  std::vector<std::vector<LpRow>> kids;
  for (int tp = 0; tp < x_tilde.periods(); ++tp) {
    std::vector<LpRow> rows;
    rows.push_back(distance_row(x_tilde, tp, Sense::kGreaterEqual, kappa + 1.0));
    for (int t = 0; t < tp; ++t) rows.push_back(distance_row(x_tilde, t, Sense::kLessEqual, kappa));
    kids.push_back(std::move(rows));
  }
  return kids;
}

inline std::vector<LpModel> sepb_branch_problems(const LpModel& base, const Solution& x_tilde,
                                                 int kappa) {
  std::vector<LpModel> out;
  for (auto& rows : sepb_branches(x_tilde, kappa)) {
    LpModel m = base;
    for (auto& r : rows) m.add_row(std::move(r));
    out.push_back(std::move(m));
  }
  return out;
}

// State ---------------------------------------------------------------------

enum class SubMode { kSubD, kSubB };
enum class SepMode { kSepD, kSepB };
enum class SepBTrigger { kAll, kImproving };

inline const char* to_string(SubMode m) { return m == SubMode::kSubD ? "subd" : "subb"; }
inline const char* to_string(SepMode m) { return m == SepMode::kSepD ? "sepd" : "sepb"; }
inline const char* to_string(SepBTrigger m) {
  return m == SepBTrigger::kAll ? "all" : "improving";
}

struct LbCenter {
  Solution x;
  int kappa = 2;  // main problem keeps dist >= kappa + 1
  SepMode separation = SepMode::kSepD;
};

struct LbState {
  std::vector<LbCenter> centers;
  long restricted = 0;
  long diversified = 0;
  long branches = 0;
  std::optional<Solution> incumbent;
  double incumbent_value = -kInfinity;
  double bound = kInfinity;

  void offer(const Solution& x, double value) {
    if (!incumbent || value > incumbent_value) {
      incumbent = x;
      incumbent_value = value;
    }
  }
};

// Restricted subproblems ----------------------------------------------------

struct TrustCutCounts {
  int current = 0;  // cuts generated at x~
  int add = 0;      // at x~^t + e^i, i closed
  int remove = 0;   // at x~^t - e^i, i open
  int remove2 = 0;  // at x~^t - e^i - e^i', both open
  int total() const { return current + add + remove + remove2; }
};

struct RestrictedModel {
  LpModel model;
  std::vector<int> theta;  // one per period
  TrustCutCounts counts;
  int first_neighbor_row = 0;  // rows [first, end) hold the cuts at neighbors of x~
  int end_neighbor_row = 0;
};

namespace detail {

// True when opening i in period t breaks a precedence against x~.
inline bool add_breaks_precedence(const Instance& inst, const Solution& x_tilde, int i, int t) {
  for (const auto& c : inst.domain().constraints)
    if (const auto* p = std::get_if<Precedence>(&c))
      if (p->after.facility == i && p->after.period == t &&
          !x_tilde(p->before.facility, p->before.period) &&
          !(p->before.facility == i && p->before.period == t))
        return true;
  return false;
}

// B1 cuts of period t at points that differ from x~ in a few facilities.
// Only users covered by a changed facility are re-examined.
class NeighborCuts {
 public:
  NeighborCuts(const Instance& inst, const Solution& x_tilde, int t, const std::vector<bool>& single)
      : inst_(inst), t_(t), single_(single), users_of_(inst.users_by_facility(t)),
        count_(inst.user_count(), 0), coef_(inst.facility_count(), 0.0), seen_(inst.user_count(), 0) {
    for (int j = 0; j < inst.user_count(); ++j) {
      for (int i : inst.covering(j, t)) count_[j] += x_tilde(i, t);
      contribute(j, count_[j], 1.0, coef_, constant_);
    }
  }

  /// Cut at x~ with the listed facilities flipped (+1 opens, -1 closes).
  Cut at(std::initializer_list<std::pair<int, int>> flips) {
    std::vector<double> coef = coef_;
    double constant = constant_;
    ++stamp_;
    for (const auto& [i, _] : flips)
      for (int j : users_of_[i]) {
        if (seen_[j] == stamp_) continue;
        seen_[j] = stamp_;
        int c = count_[j];
        for (const auto& [f, sign] : flips)
          if (covers(j, f)) c += sign;
        contribute(j, count_[j], -1.0, coef, constant);
        contribute(j, c, 1.0, coef, constant);
      }
    Cut cut;
    cut.theta = t_;
    cut.variant = GammaVariant::kB1;
    cut.constant = constant;
    for (int i = 0; i < inst_.facility_count(); ++i)
      if (std::abs(coef[i]) > 1e-9) cut.coefficients.emplace_back(inst_.var(i, t_), coef[i]);
    return cut;
  }

 private:
  bool covers(int j, int i) const {
    const auto& c = inst_.covering(j, t_);
    return std::find(c.begin(), c.end(), i) != c.end();
  }
  void contribute(int j, int count, double sign, std::vector<double>& coef, double& constant) const {
    const double d = sign * inst_.demand(j, t_);
    if (count == 0 || (count == 1 && single_[j])) {
      for (int i : inst_.covering(j, t_)) coef[i] += d;
    } else {
      constant += d;
    }
  }

  const Instance& inst_;
  int t_;
  std::vector<bool> single_;
  std::vector<std::vector<int>> users_of_;
  std::vector<int> count_;
  std::vector<double> coef_;
  double constant_ = 0.0;
  std::vector<int> seen_;
  int stamp_ = 0;
};

}  // namespace detail

/// Per-period distance <= 2 around x~ with B1 trust cuts. Cuts at x~ + e^i
/// and x~ - e^i evaluate single and double moves exactly; cuts at
/// x~ - e^i - e^i' make pure double removals exact too, so the model's value
/// equals coverage on the whole neighborhood.
inline RestrictedModel build_restricted_reformulation(const Instance& inst, const Solution& x_tilde,
                                                      const std::vector<int>& singles,
                                                      const std::vector<Cut>& inherited = {},
                                                      const std::vector<LbCenter>& prior = {}) {
  RestrictedModel rm;
  const int n = inst.variable_count();
  for (int k = 0; k < n; ++k) rm.model.add_variable(0, 1, 0, true);
  for (int t = 0; t < inst.periods(); ++t)
    rm.theta.push_back(rm.model.add_variable(0, inst.period_demand(t), 1.0));
  for (const DomainRow& r : inst.lower_domain()) rm.model.add_row({r.terms, r.sense, r.rhs});
  for (const Cut& c : inherited) {
    if (c.theta == kAggregateTheta) {
      // theta_total <= cut: only usable through the sum of the thetas.
      LpRow row{{}, Sense::kGreaterEqual, -c.constant};
      for (const auto& [k, a] : c.coefficients) row.terms.emplace_back(k, a);
      for (int th : rm.theta) row.terms.emplace_back(th, -1.0);
      rm.model.add_row(std::move(row));
    } else {
      rm.model.add_row(cut_row(c, rm.theta[c.theta]));
    }
  }
  for (int t = 0; t < inst.periods(); ++t)
    rm.model.add_row(distance_row(x_tilde, t, Sense::kLessEqual, 2.0));

  for (const Cut& c : multi_cuts(inst, x_tilde, GammaVariant::kB1, singles)) {
    rm.model.add_row(cut_row(c, rm.theta[c.theta]));
    ++rm.counts.current;
  }
  rm.first_neighbor_row = rm.model.row_count();
  const std::vector<bool> single = detail::mask_of(singles, inst.user_count());
  for (int t = 0; t < inst.periods(); ++t) {
    detail::NeighborCuts cuts(inst, x_tilde, t, single);
    std::vector<int> open;
    for (int i = 0; i < inst.facility_count(); ++i) {
      if (x_tilde(i, t)) {
        open.push_back(i);
        rm.model.add_row(cut_row(cuts.at({{i, -1}}), rm.theta[t]));
        ++rm.counts.remove;
      } else if (!detail::add_breaks_precedence(inst, x_tilde, i, t)) {
        rm.model.add_row(cut_row(cuts.at({{i, 1}}), rm.theta[t]));
        ++rm.counts.add;
      }
    }
    for (std::size_t a = 0; a < open.size(); ++a)
      for (std::size_t b = a + 1; b < open.size(); ++b) {
        rm.model.add_row(cut_row(cuts.at({{open[a], -1}, {open[b], -1}}), rm.theta[t]));
        ++rm.counts.remove2;
      }
  }
  rm.end_neighbor_row = rm.model.row_count();
  for (const LbCenter& c : prior)
    if (c.separation == SepMode::kSepD) append_sepd(rm.model, c.x, c.kappa);
  return rm;
}

struct NeighborhoodResult {
  std::optional<Solution> x;
  double value = -kInfinity;
  bool solved = false;  // false when the time limit stopped the search
};

namespace detail {

inline NeighborhoodResult from_milp(const Instance& inst, const MilpResult& r) {
  NeighborhoodResult out;
  out.solved = r.status == MilpStatus::kOptimal || r.status == MilpStatus::kInfeasible;
  if (r.has_incumbent) {
    out.x = rounded_x(inst, r.incumbent);
    out.value = coverage(inst, *out.x);
  }
  return out;
}

inline std::function<void(LpModel&)> neighborhood_rows(const Solution& x_tilde, int kappa,
                                                       bool exclude_center,
                                                       const std::vector<LbCenter>& prior) {
  return [=](LpModel& m) {
    for (int t = 0; t < x_tilde.periods(); ++t)
      m.add_row(distance_row(x_tilde, t, Sense::kLessEqual, kappa));
    if (exclude_center) append_sepd(m, x_tilde, 0);
    for (const LbCenter& c : prior)
      if (c.separation == SepMode::kSepD) append_sepd(m, c.x, c.kappa);
  };
}

}  // namespace detail

/// Best point within per-period distance kappa of x~ (and outside the prior
/// SepD neighborhoods). Returns x~ itself unless a strictly better point exists.
inline NeighborhoodResult solve_restricted(const Instance& inst, const Solution& x_tilde, int kappa,
                                           SubMode mode, double time_limit = 60.0,
                                           const std::vector<LbCenter>& prior = {},
                                           const std::vector<Cut>& inherited = {}) {
  if (mode == SubMode::kSubD && kappa != 2)
    throw std::invalid_argument("solve_restricted: SubD needs kappa = 2");
  if (kappa < 0) throw std::invalid_argument("solve_restricted: kappa must be >= 0");
  const double base = coverage(inst, x_tilde);
  NeighborhoodResult out;
  if (mode == SubMode::kSubD) {
    RestrictedModel rm = build_restricted_reformulation(inst, x_tilde, singles_set(inst), inherited, prior);
    std::vector<double> warm(rm.model.variable_count(), 0.0);
    for (std::size_t k = 0; k < x_tilde.size(); ++k) warm[k] = x_tilde[k];
    for (int t = 0; t < inst.periods(); ++t) warm[rm.theta[t]] = period_coverage(inst, x_tilde, t);
    // The neighbor cuts start in a pool and enter the model once violated.
    auto& rows = rm.model.rows;
    std::vector<LpRow> pool(std::make_move_iterator(rows.begin() + rm.first_neighbor_row),
                            std::make_move_iterator(rows.begin() + rm.end_neighbor_row));
    rows.erase(rows.begin() + rm.first_neighbor_row, rows.begin() + rm.end_neighbor_row);
    std::vector<char> used(pool.size(), 0);
    MilpOptions mo;
    mo.time_limit_seconds = time_limit;
    mo.fractional_events = FractionalEvents::kAll;
    auto callback = [&](CandidateEvent& ev) {
      for (std::size_t r = 0; r < pool.size(); ++r)
        if (!used[r] && pool[r].violation(ev.values) > mo.cut_violation_tolerance) {
          ev.sink.add_row(pool[r]);
          used[r] = 1;
        }
    };
    out = detail::from_milp(inst, solve_milp(std::move(rm.model), callback, mo, WarmStart{warm, base}));
  } else {
    detail::BbcConfig cfg;
    cfg.warm = x_tilde;
    cfg.extend = detail::neighborhood_rows(x_tilde, kappa, false, prior);
    SolverOptions so;
    so.time_limit_seconds = time_limit;
    out = detail::from_milp(inst, detail::run_bbc_milp(inst, cfg, so));
  }
  if (!out.x || out.value <= base + 1e-9) {
    out.x = x_tilde;
    out.value = base;
  }
  return out;
}

/// Best point other than x~ within per-period distance kappa_prime (SubB).
inline NeighborhoodResult solve_diversified(const Instance& inst, const Solution& x_tilde,
                                            int kappa_prime, double time_limit = 60.0,
                                            const std::vector<LbCenter>& prior = {}) {
  if (kappa_prime < 1) throw std::invalid_argument("solve_diversified: kappa' must be >= 1");
  detail::BbcConfig cfg;
  cfg.extend = detail::neighborhood_rows(x_tilde, kappa_prime, true, prior);
  SolverOptions so;
  so.time_limit_seconds = time_limit;
  return detail::from_milp(inst, detail::run_bbc_milp(inst, cfg, so));
}

// Driver --------------------------------------------------------------------

struct LbFeatures {
  SubMode sub = SubMode::kSubD;
  SepMode sep = SepMode::kSepD;
  SepBTrigger trigger = SepBTrigger::kAll;
  int kappa = 2;
  double subproblem_time_limit = 60.0;
  int root_rounds = 50;
};

inline std::string features_label(const LbFeatures& f) {
  std::string s = std::string(to_string(f.sub)) + "+" + to_string(f.sep);
  if (f.sep == SepMode::kSepB) s += std::string("+") + to_string(f.trigger);
  return s;
}

inline SolveResult solve_lb(const Instance& original, const LbFeatures& features = {},
                            const SolverOptions& opts = {}) {
  if (features.kappa < 1) throw std::invalid_argument("solve_lb: kappa must be >= 1");
  if (features.sub == SubMode::kSubD && features.kappa != 2)
    throw std::invalid_argument("solve_lb: SubD needs kappa = 2");
  const auto t0 = std::chrono::steady_clock::now();
  const Instance inst = preprocess(original).first;
  const int kappa = features.kappa;
  MainProblem mp = build_main_problem(inst, true, false);
  const std::optional<Solution> greedy = greedy_warmstart(inst);
  std::optional<CorePoint> core;
  if (greedy) core = make_core_point(*greedy);
  CutGenerator gen(inst, mp, GammaVariant::kParetoB1, core);
  CutPool pool;
  LbState state;
  if (greedy) state.offer(*greedy, coverage(inst, *greedy));

  auto remaining = [&] { return opts.time_limit_seconds - detail::seconds_since(t0); };

  // Root relaxation: multi-cuts at LP optima until none is violated.
  for (int round = 0; round < features.root_rounds && remaining() > 0; ++round) {
    LpModel relax = mp.model;
    for (auto& v : relax.variables) v.integer = false;
    const LpSolution lp = solve_lp(relax);
    if (lp.status != LpStatus::kOptimal) break;
    const FractionalSolution x = x_part(inst, lp.primal);
    const int added = add_violated(gen.cuts_at(x), mp, pool, lp.primal, 1e-6,
                                   [&](LpRow r) { mp.model.add_row(std::move(r)); });
    if (added == 0) break;
  }

  std::set<std::vector<std::uint8_t>> explored;  // centers whose neighborhood was solved
  auto key = [](const Solution& x) { return std::vector<std::uint8_t>(x.values().begin(), x.values().end()); };

  auto add_all_cuts = [&](const Solution& x, CutSink& sink) {
    for (const Cut& c : multi_cuts(inst, x, GammaVariant::kB1, mp.singles))
      if (pool.insert(c)) sink.add_row(cut_row(c, mp.theta_var(c)));
  };
  auto propose = [&](const Solution& x, double value, CutSink& sink) {
    std::vector<double> v(mp.n + mp.theta.size(), 0.0);
    for (int k = 0; k < mp.n; ++k) v[k] = x[k];
    for (int t = 0; t < inst.periods(); ++t) v[mp.theta[t]] = period_coverage(inst, x, t);
    sink.propose_solution(std::move(v), value);
    state.offer(x, value);
  };

  auto callback = [&](CandidateEvent& ev) {
    if (ev.kind != EventKind::kIntegerCandidate) return;
    const Solution xt = rounded_x(inst, ev.values);
    gen.observe_integer(xt);
    add_violated(gen.cuts_at(to_fractional(xt)), mp, pool, ev.values, 1e-6,
                 [&](LpRow r) { ev.sink.add_row(std::move(r)); });
    const double sub_limit = std::min(features.subproblem_time_limit, remaining());

    if (explored.count(key(xt))) {
      // Seen before in another subtree; its neighborhood is already known.
      if (features.sep == SepMode::kSepB && features.trigger == SepBTrigger::kAll) {
        ev.sink.branch(sepb_branches(xt, kappa));
        ++state.branches;
      }
      return;
    }
    if (sub_limit <= 0) return;

    // x~ itself is about to be cut off, so it must be kept as a solution.
    propose(xt, coverage(inst, xt), ev.sink);
    std::vector<LbCenter> prior = state.centers;
    std::vector<Solution> solved_centers;
    bool improved = false;
    Solution center = xt;
    double value = coverage(inst, xt);
    while (remaining() > 0) {
      const double lim = std::min(features.subproblem_time_limit, remaining());
      const NeighborhoodResult r =
          solve_restricted(inst, center, kappa, features.sub, lim, prior, pool.cuts());
      ++state.restricted;
      if (!r.solved) break;  // an unfinished neighborhood is not separated
      solved_centers.push_back(center);
      explored.insert(key(center));
      if (r.value > value + 1e-9) {
        improved = true;
        add_all_cuts(*r.x, ev.sink);
        propose(*r.x, r.value, ev.sink);
        center = *r.x;
        value = r.value;
        continue;
      }
      const double dlim = std::min(features.subproblem_time_limit, remaining());
      if (dlim > 0) {
        const NeighborhoodResult d = solve_diversified(inst, center, kappa + 1, dlim, prior);
        ++state.diversified;
        if (d.x) {
          add_all_cuts(*d.x, ev.sink);
          propose(*d.x, d.value, ev.sink);
        }
      }
      break;
    }
    log_debug("lb: candidate ", value, " centers ", solved_centers.size(), improved ? " improved" : "");

    if (features.sep == SepMode::kSepD) {
      for (const Solution& c : solved_centers) {
        append_sepd(ev.sink, c, kappa);
        state.centers.push_back({c, kappa, SepMode::kSepD});
      }
      return;
    }
    const bool own = !solved_centers.empty() && solved_centers.front() == xt;
    if (own && (features.trigger == SepBTrigger::kAll || improved)) {
      ev.sink.branch(sepb_branches(xt, kappa));
      state.centers.push_back({xt, kappa, SepMode::kSepB});
      ++state.branches;
    }
  };

  MilpOptions mo;
  mo.time_limit_seconds = opts.time_limit_seconds;
  mo.node_limit = opts.node_limit;
  mo.fractional_events = FractionalEvents::kNone;
  std::optional<WarmStart> warm;
  if (greedy) warm = warm_start_of(inst, mp, *greedy);
  const MilpResult r = solve_milp(mp.model, callback, mo, warm);
  SolveResult out = detail::finish(original, r, mp.n, "lb", features_label(features),
                                   detail::seconds_since(t0));
  out.restricted_subproblems = state.restricted;
  out.diversified_subproblems = state.diversified;
  out.branches = r.branches;
  log_info("lb: status ", to_string(r.status), " objective ", out.objective, " restricted ",
           state.restricted, " diversified ", state.diversified, " branches ", r.branches);
  return out;
}

}  // namespace dyncover

#endif  // DYNCOVER_LOCAL_BRANCHING_HPP_
