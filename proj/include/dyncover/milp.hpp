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

// Best-bound branch and bound over `solve_lp` with a candidate callback.
//
// Lazy-constraint semantics: every LP solution that is integral on the
// integer variables is handed to the callback before it can become the
// incumbent. The callback may, through the CutSink:
//   * add globally valid rows (they enter every open and future node),
//   * add new variables (their bounds apply everywhere),
//   * propose a heuristic solution,
//   * replace the current node by sibling subproblems with local rows,
//   * reject the candidate.
// If the callback added a violated row or a variable, the node LP is solved
// again. A rejection with no cut prunes the node.
//
// Fractional events fire at the root (or at every node) in a
// repeat-while-violated loop capped at `max_fractional_rounds` per node.
//
// Each node LP is rebuilt from the model, the global rows, the node's bound
// changes and its local rows; there is no warm start.

#ifndef DYNCOVER_MILP_HPP_
#define DYNCOVER_MILP_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "dyncover/lp.hpp"

namespace dyncover {

enum class MilpStatus { kOptimal, kFeasible, kInfeasible, kTimeLimit };

inline const char* to_string(MilpStatus s) {
  switch (s) {
    case MilpStatus::kOptimal:
      return "optimal";
    case MilpStatus::kFeasible:
      return "feasible";
    case MilpStatus::kInfeasible:
      return "infeasible";
    case MilpStatus::kTimeLimit:
      return "time-limit";
  }
  return "?";
}

enum class FractionalEvents { kNone, kRoot, kAll };

struct MilpOptions {
  double time_limit_seconds = kInfinity;
  long node_limit = std::numeric_limits<long>::max();
  double integrality_tolerance = 1e-6;
  double cut_violation_tolerance = 1e-6;
  double absolute_gap = 1e-6;
  double relative_gap = 1e-9;
  FractionalEvents fractional_events = FractionalEvents::kRoot;
  int max_fractional_rounds = 50;
  LpOptions lp;
};

enum class EventKind { kIntegerCandidate, kFractional };

/// Collects the callback's requests for the current event.
class CutSink {
 public:
  explicit CutSink(int variable_count) : variable_count_(variable_count) {}

  void add_row(LpRow row) {
    validate_row(row, variable_count_);
    rows_.push_back(std::move(row));
  }
  int add_variable(double lower, double upper, double objective, bool integer) {
    if (!(lower <= upper)) throw std::invalid_argument("CutSink: inconsistent bounds");
    variables_.push_back({lower, upper, objective, integer});
    return variable_count_++;
  }
  void reject() { rejected_ = true; }
  void propose_solution(std::vector<double> values, double objective) {
    if (!proposal_ || objective > proposal_->second)
      proposal_.emplace(std::move(values), objective);
  }
  /// Replaces the current node by one child per entry, each with extra local rows.
  void branch(std::vector<std::vector<LpRow>> children) {
    for (const auto& c : children)
      for (const auto& r : c) validate_row(r, variable_count_);
    children_ = std::move(children);
    branched_ = true;
  }

  int variable_count() const { return variable_count_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  const std::vector<LpVariable>& variables() const { return variables_; }
  bool rejected() const { return rejected_; }
  bool branched() const { return branched_; }
  std::vector<std::vector<LpRow>>& children() { return children_; }
  std::optional<std::pair<std::vector<double>, double>>& proposal() { return proposal_; }

 private:
  int variable_count_;
  std::vector<LpRow> rows_;
  std::vector<LpVariable> variables_;
  std::vector<std::vector<LpRow>> children_;
  std::optional<std::pair<std::vector<double>, double>> proposal_;
  bool rejected_ = false;
  bool branched_ = false;
};

struct CandidateEvent {
  EventKind kind;
  bool at_root;
  int depth;
  std::span<const double> values;
  double objective;
  bool has_incumbent;
  double incumbent_objective;
  CutSink& sink;
};

using CandidateCallback = std::function<void(CandidateEvent&)>;

struct MilpResult {
  MilpStatus status = MilpStatus::kInfeasible;
  bool has_incumbent = false;
  std::vector<double> incumbent;
  double objective = -kInfinity;
  double bound = kInfinity;
  double gap = kInfinity;
  long nodes = 0;
  long lazy_cuts = 0;
  long user_cuts = 0;
  long branches = 0;  // children created through CutSink::branch
  double wall_seconds = 0.0;
};

struct WarmStart {
  std::vector<double> values;
  double objective;
};

inline double relative_gap(double bound, double incumbent) {
  return std::max(0.0, bound - incumbent) / std::max(1e-10, std::abs(bound));
}

namespace detail {

class BranchAndBound {
 public:
  BranchAndBound(LpModel model, const CandidateCallback& callback, const MilpOptions& opts)
      : model_(std::move(model)), callback_(callback), opts_(opts) {
    start_ = std::chrono::steady_clock::now();
  }

  MilpResult run(const std::optional<WarmStart>& warm) {
    for (const auto& row : model_.rows) validate_row(row, model_.variable_count());
    if (warm) {
      result_.has_incumbent = true;
      result_.incumbent = warm->values;
      result_.objective = warm->objective;
    }
    double trivial = 0.0;
    for (const auto& v : model_.variables)
      trivial += std::max(v.objective * v.lower, v.objective * v.upper);
    push(Node{{}, {}, trivial, 0, 0});

    bool stopped = false;
    while (!open_.empty()) {
      if (out_of_time() || result_.nodes >= opts_.node_limit) {
        stopped = true;
        break;
      }
      Node node = open_.top();
      open_.pop();
      if (result_.has_incumbent && node.bound <= result_.objective + gap_tolerance()) continue;
      if (!process(node)) {
        // Interrupted inside the node; keep its bound.
        open_bound_ = std::max(open_bound_, node.bound);
        stopped = true;
        break;
      }
    }

    double bound = open_bound_;
    if (stopped) {
      while (!open_.empty()) {
        bound = std::max(bound, open_.top().bound);
        open_.pop();
      }
    }
    if (result_.has_incumbent) bound = std::max(bound, result_.objective);
    if (!stopped) {
      result_.status = result_.has_incumbent
                           ? (unproven_ ? MilpStatus::kFeasible : MilpStatus::kOptimal)
                           : MilpStatus::kInfeasible;
      if (result_.has_incumbent && !unproven_) bound = result_.objective;
    } else {
      result_.status = MilpStatus::kTimeLimit;
    }
    if (!result_.has_incumbent && !stopped && !unproven_) bound = -kInfinity;
    result_.bound = bound;
    result_.gap = result_.has_incumbent ? relative_gap(bound, result_.objective) : kInfinity;
    result_.wall_seconds = elapsed();
    return std::move(result_);
  }

 private:
  struct Node {
    std::vector<std::tuple<int, double, double>> bounds;
    std::vector<LpRow> local_rows;
    double bound;
    long seq;
    int depth;
  };
  struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
      if (a.bound != b.bound) return a.bound < b.bound;
      return a.seq > b.seq;
    }
  };

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  bool out_of_time() const { return elapsed() >= opts_.time_limit_seconds; }
  double gap_tolerance() const {
    return std::max(opts_.absolute_gap, opts_.relative_gap * std::abs(result_.objective));
  }

  void push(Node node) {
    node.seq = next_seq_++;
    open_.push(std::move(node));
  }

  LpModel node_lp(const Node& node) const {
    LpModel lp;
    lp.variables = model_.variables;
    for (const auto& [k, lo, hi] : node.bounds) {
      lp.variables[k].lower = std::max(lp.variables[k].lower, lo);
      lp.variables[k].upper = std::min(lp.variables[k].upper, hi);
    }
    lp.rows = model_.rows;
    lp.rows.insert(lp.rows.end(), node.local_rows.begin(), node.local_rows.end());
    return lp;
  }

  bool bounds_consistent(const LpModel& lp) const {
    for (const auto& v : lp.variables)
      if (v.lower > v.upper) return false;
    return true;
  }

  void offer(std::vector<double> values, double objective) {
    if (!result_.has_incumbent || objective > result_.objective) {
      values.resize(model_.variables.size(), 0.0);
      result_.has_incumbent = true;
      result_.incumbent = std::move(values);
      result_.objective = objective;
    }
  }

  // Applies the sink's global requests; returns true if the node LP must be re-solved.
  bool absorb(CutSink& sink, const std::vector<double>& x, EventKind kind) {
    bool resolve = !sink.variables().empty();
    for (const auto& v : sink.variables()) model_.variables.push_back(v);
    std::vector<double> ext = x;
    ext.resize(model_.variables.size(), 0.0);
    for (const auto& row : sink.rows()) {
      if (row.violation(ext) > opts_.cut_violation_tolerance) resolve = true;
      for (const auto& [k, a] : row.terms)
        if (k >= static_cast<int>(x.size())) resolve = true;
      model_.rows.push_back(row);
    }
    (kind == EventKind::kIntegerCandidate ? result_.lazy_cuts : result_.user_cuts) +=
        static_cast<long>(sink.rows().size());
    if (auto& p = sink.proposal()) offer(std::move(p->first), p->second);
    return resolve;
  }

  void make_children(const Node& node, double bound, std::vector<std::vector<LpRow>>& kids) {
    for (auto& rows : kids) {
      Node child{node.bounds, node.local_rows, bound, 0, node.depth + 1};
      child.local_rows.insert(child.local_rows.end(), std::make_move_iterator(rows.begin()),
                              std::make_move_iterator(rows.end()));
      push(std::move(child));
      ++result_.branches;
    }
  }

  // Returns false when interrupted by the time limit.
  bool process(const Node& node) {
    ++result_.nodes;
    int fractional_rounds = 0;
    const bool at_root = node.depth == 0;
    while (true) {
      if (out_of_time()) return false;
      const LpModel lp = node_lp(node);
      if (!bounds_consistent(lp)) return true;
      const LpSolution sol = solve_lp(lp, opts_.lp);
      if (sol.status == LpStatus::kInfeasible) return true;
      if (sol.status == LpStatus::kIterationLimit) {
        unproven_ = true;
        return true;
      }
      if (sol.status == LpStatus::kUnbounded)
        throw std::runtime_error("solve_milp: unbounded relaxation");
      const double z = sol.objective;
      if (result_.has_incumbent && z <= result_.objective + gap_tolerance()) return true;

      int branch_var = -1;
      double best_frac = 0.0;
      for (int j = 0; j < lp.variable_count(); ++j) {
        if (!lp.variables[j].integer) continue;
        const double v = sol.primal[j];
        const double f = std::min(v - std::floor(v), std::ceil(v) - v);
        if (f > opts_.integrality_tolerance && f > best_frac) {
          best_frac = f;
          branch_var = j;
        }
      }

      if (branch_var >= 0) {
        const bool fire = callback_ && fractional_rounds < opts_.max_fractional_rounds &&
                          (opts_.fractional_events == FractionalEvents::kAll ||
                           (opts_.fractional_events == FractionalEvents::kRoot && at_root));
        if (fire) {
          CutSink sink(model_.variable_count());
          CandidateEvent ev{EventKind::kFractional, at_root, node.depth, sol.primal, z,
                            result_.has_incumbent, result_.objective, sink};
          callback_(ev);
          const bool resolve = absorb(sink, sol.primal, EventKind::kFractional);
          if (sink.branched()) {
            make_children(node, z, sink.children());
            return true;
          }
          if (resolve) {
            ++fractional_rounds;
            continue;
          }
        }
        const double v = sol.primal[branch_var];
        Node down{node.bounds, node.local_rows, z, 0, node.depth + 1};
        down.bounds.emplace_back(branch_var, -kInfinity, std::floor(v));
        Node up{node.bounds, node.local_rows, z, 0, node.depth + 1};
        up.bounds.emplace_back(branch_var, std::ceil(v), kInfinity);
        push(std::move(down));
        push(std::move(up));
        return true;
      }

      std::vector<double> x = sol.primal;
      for (int j = 0; j < lp.variable_count(); ++j)
        if (lp.variables[j].integer) x[j] = std::round(x[j]);
      if (callback_) {
        CutSink sink(model_.variable_count());
        CandidateEvent ev{EventKind::kIntegerCandidate, at_root, node.depth, x, z,
                          result_.has_incumbent, result_.objective, sink};
        callback_(ev);
        const bool resolve = absorb(sink, x, EventKind::kIntegerCandidate);
        if (sink.branched()) {
          make_children(node, z, sink.children());
          return true;
        }
        if (resolve) continue;
        if (sink.rejected()) return true;
      }
      offer(std::move(x), z);
      return true;
    }
  }

  LpModel model_;
  const CandidateCallback& callback_;
  MilpOptions opts_;
  std::chrono::steady_clock::time_point start_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  MilpResult result_;
  long next_seq_ = 0;
  double open_bound_ = -kInfinity;
  bool unproven_ = false;
};

}  // namespace detail

/// Maximizes `model` over its integer variables. `callback` may be empty.
inline MilpResult solve_milp(LpModel model, const CandidateCallback& callback = {},
                             const MilpOptions& opts = {},
                             const std::optional<WarmStart>& warm = std::nullopt) {
  if (!(opts.integrality_tolerance > 0) || !(opts.cut_violation_tolerance > 0))
    throw std::invalid_argument("solve_milp: tolerances must be positive");
  detail::BranchAndBound bb(std::move(model), callback, opts);
  return bb.run(warm);
}

}  // namespace dyncover

#endif  // DYNCOVER_MILP_HPP_
