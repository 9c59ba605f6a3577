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

// Problem data for the dynamic maximum covering location problem.
//
// An instance has T periods, |I| candidate facilities and a set of users J.
// User j has a positive demand d_j^t in every period and, per period, the
// list of facilities covering it (a_ij^t = 1). Decisions are binary
// x_i^t = 1 iff facility i is open in period t, restricted to a domain Omega
// given as structured linear constraints over x only.
//
// Every (facility, period) pair maps to the flat index t * |I| + i. The same
// layout is used by solutions and by the x columns of every solver model.

#ifndef DYNCOVER_MODEL_HPP_
#define DYNCOVER_MODEL_HPP_

#include <algorithm>
#include <compare>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dyncover {

/// Dense (facility, period) matrix stored period-major.
template <typename T>
class FacilityMatrix {
 public:
  using value_type = T;

  FacilityMatrix() = default;
  FacilityMatrix(int facilities, int periods, T fill = T{})
      : facilities_(facilities),
        periods_(periods),
        data_(static_cast<std::size_t>(facilities) * periods, fill) {
    if (facilities < 0 || periods < 0) {
      throw std::invalid_argument("FacilityMatrix: negative dimension");
    }
  }

  int facilities() const { return facilities_; }
  int periods() const { return periods_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int i, int t) { return data_[index(i, t)]; }
  const T& operator()(int i, int t) const { return data_[index(i, t)]; }
  T& operator[](std::size_t k) { return data_[k]; }
  const T& operator[](std::size_t k) const { return data_[k]; }

  std::span<const T> values() const { return data_; }
  std::span<T> values() { return data_; }
  std::span<const T> period(int t) const {
    return std::span<const T>(data_).subspan(
        static_cast<std::size_t>(t) * facilities_, facilities_);
  }

  std::size_t index(int i, int t) const {
    return static_cast<std::size_t>(t) * facilities_ + i;
  }

  friend bool operator==(const FacilityMatrix&, const FacilityMatrix&) = default;
  friend auto operator<=>(const FacilityMatrix& a, const FacilityMatrix& b) {
    return a.data_ <=> b.data_;
  }

 private:
  int facilities_ = 0;
  int periods_ = 0;
  std::vector<T> data_;
};

/// Binary open/close decisions x_i^t.
using Solution = FacilityMatrix<std::uint8_t>;
/// Relaxed decisions in [0,1], used for fractional candidates and core points.
using FractionalSolution = FacilityMatrix<double>;

inline FractionalSolution to_fractional(const Solution& x) {
  FractionalSolution out(x.facilities(), x.periods());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k];
  return out;
}

/// Rounds a relaxed point whose entries are within `tol` of 0/1.
inline Solution round_solution(const FractionalSolution& x, double tol = 1e-6) {
  Solution out(x.facilities(), x.periods());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double v = x[k];
    if (std::abs(v) <= tol) {
      out[k] = 0;
    } else if (std::abs(v - 1.0) <= tol) {
      out[k] = 1;
    } else {
      throw std::invalid_argument("round_solution: entry is not integral");
    }
  }
  return out;
}

struct UserRecord {
  std::vector<double> demands;              // d_j^t, one per period
  std::vector<std::vector<int>> covering;   // per period: facilities i with a_ij^t = 1

  friend bool operator==(const UserRecord&, const UserRecord&) = default;
};

/// A reference to the decision x_i^t.
struct VarRef {
  int facility = 0;
  int period = 0;
  friend bool operator==(const VarRef&, const VarRef&) = default;
};

struct LinearTerm {
  int facility = 0;
  int period = 0;
  double coef = 0.0;
  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

/// sum_i x_i^t <= limit.
struct Cardinality {
  int period = 0;
  double limit = 0.0;
  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

/// sum coef * x_i^t <= rhs.
struct Knapsack {
  std::vector<LinearTerm> terms;
  double rhs = 0.0;
  friend bool operator==(const Knapsack&, const Knapsack&) = default;
};

/// x[after] <= x[before].
struct Precedence {
  VarRef before;
  VarRef after;
  friend bool operator==(const Precedence&, const Precedence&) = default;
};

/// x_i^t <= x_i^{t+1} for every facility and t < T.
struct Persistence {
  friend bool operator==(const Persistence&, const Persistence&) = default;
};

/// sum_i c_i (x_i^t - x_i^{t-1}) <= rhs, with x^{-1} = 0.
struct Budget {
  int period = 0;
  std::vector<double> costs;
  double rhs = 0.0;
  friend bool operator==(const Budget&, const Budget&) = default;
};

struct LinearConstraint {
  std::vector<LinearTerm> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

using DomainConstraint = std::variant<Cardinality, Knapsack, Precedence, Persistence,
                                      Budget, LinearConstraint>;

struct DomainSpec {
  std::vector<DomainConstraint> constraints;
  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

  bool has_persistence() const {
    return std::any_of(constraints.begin(), constraints.end(), [](const auto& c) {
      return std::holds_alternative<Persistence>(c);
    });
  }
};

/// A lowered domain row over flat x indices.
struct DomainRow {
  std::vector<std::pair<int, double>> terms;  // (flat index, coefficient)
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

class Instance {
 public:
  Instance() = default;
  Instance(int periods, int facility_count, std::vector<UserRecord> users,
           DomainSpec domain, std::string name = {})
      : periods_(periods),
        facility_count_(facility_count),
        users_(std::move(users)),
        domain_(std::move(domain)),
        name_(std::move(name)) {
    validate();
  }

  int periods() const { return periods_; }
  int facility_count() const { return facility_count_; }
  int user_count() const { return static_cast<int>(users_.size()); }
  int variable_count() const { return periods_ * facility_count_; }
  const std::vector<UserRecord>& users() const { return users_; }
  const UserRecord& user(int j) const { return users_.at(j); }
  const DomainSpec& domain() const { return domain_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  int var(int i, int t) const { return t * facility_count_ + i; }

  double demand(int j, int t) const { return users_[j].demands[t]; }
  const std::vector<int>& covering(int j, int t) const { return users_[j].covering[t]; }

  double total_demand() const {
    double s = 0.0;
    for (const auto& u : users_)
      for (double d : u.demands) s += d;
    return s;
  }
  double period_demand(int t) const {
    double s = 0.0;
    for (const auto& u : users_) s += u.demands[t];
    return s;
  }

  /// Users covered by facility i in period t (inverse of the covering lists).
  std::vector<std::vector<int>> users_by_facility(int t) const {
    std::vector<std::vector<int>> out(facility_count_);
    for (int j = 0; j < user_count(); ++j)
      for (int i : users_[j].covering[t]) out[i].push_back(j);
    return out;
  }

  /// Deterministic, order-stable lowering of every structured constraint.
  std::vector<DomainRow> lower_domain() const {
    std::vector<DomainRow> rows;
    for (const auto& c : domain_.constraints) {
      std::visit([&](const auto& k) { lower(k, rows); }, c);
    }
    return rows;
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  void check_var(int i, int t, const char* what) const {
    if (i < 0 || i >= facility_count_ || t < 0 || t >= periods_) {
      throw std::invalid_argument(std::string(what) + ": variable (" + std::to_string(i) +
                                  ", " + std::to_string(t) + ") out of range");
    }
  }

  void validate() const {
    if (periods_ <= 0) throw std::invalid_argument("Instance: periods must be positive");
    if (facility_count_ <= 0)
      throw std::invalid_argument("Instance: facility_count must be positive");
    for (std::size_t j = 0; j < users_.size(); ++j) {
      const auto& u = users_[j];
      const std::string who = "user " + std::to_string(j);
      if (static_cast<int>(u.demands.size()) != periods_ ||
          static_cast<int>(u.covering.size()) != periods_) {
        throw std::invalid_argument(who + ": demand/coverage length differs from T");
      }
      for (double d : u.demands) {
        if (!(d > 0.0) || !std::isfinite(d))
          throw std::invalid_argument(who + ": demand must satisfy d_j^t > 0");
      }
      for (const auto& cov : u.covering) {
        std::vector<int> sorted = cov;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
          throw std::invalid_argument(who + ": duplicate covering facility");
        for (int i : cov) {
          if (i < 0 || i >= facility_count_)
            throw std::invalid_argument(who + ": covering facility " + std::to_string(i) +
                                        " out of range");
        }
      }
    }
    for (const auto& c : domain_.constraints) {
      std::visit([&](const auto& k) { check(k); }, c);
    }
  }

  void check(const Cardinality& c) const {
    if (c.period < 0 || c.period >= periods_)
      throw std::invalid_argument("cardinality: period out of range");
  }
  void check(const Knapsack& c) const {
    for (const auto& term : c.terms) check_var(term.facility, term.period, "knapsack");
  }
  void check(const Precedence& c) const {
    check_var(c.before.facility, c.before.period, "precedence");
    check_var(c.after.facility, c.after.period, "precedence");
  }
  void check(const Persistence&) const {}
  void check(const Budget& c) const {
    if (c.period < 0 || c.period >= periods_)
      throw std::invalid_argument("budget: period out of range");
    if (static_cast<int>(c.costs.size()) != facility_count_)
      throw std::invalid_argument("budget: one cost per facility required");
  }
  void check(const LinearConstraint& c) const {
    for (const auto& term : c.terms) check_var(term.facility, term.period, "linear");
  }

  void lower(const Cardinality& c, std::vector<DomainRow>& rows) const {
    DomainRow r;
    for (int i = 0; i < facility_count_; ++i) r.terms.emplace_back(var(i, c.period), 1.0);
    r.rhs = c.limit;
    rows.push_back(std::move(r));
  }
  void lower(const Knapsack& c, std::vector<DomainRow>& rows) const {
    DomainRow r;
    for (const auto& term : c.terms)
      r.terms.emplace_back(var(term.facility, term.period), term.coef);
    r.rhs = c.rhs;
    rows.push_back(std::move(r));
  }
  void lower(const Precedence& c, std::vector<DomainRow>& rows) const {
    DomainRow r;
    r.terms.emplace_back(var(c.after.facility, c.after.period), 1.0);
    r.terms.emplace_back(var(c.before.facility, c.before.period), -1.0);
    rows.push_back(std::move(r));
  }
  void lower(const Persistence&, std::vector<DomainRow>& rows) const {
    for (int t = 0; t + 1 < periods_; ++t) {
      for (int i = 0; i < facility_count_; ++i) {
        DomainRow r;
        r.terms.emplace_back(var(i, t), 1.0);
        r.terms.emplace_back(var(i, t + 1), -1.0);
        rows.push_back(std::move(r));
      }
    }
  }
  void lower(const Budget& c, std::vector<DomainRow>& rows) const {
    DomainRow r;
    for (int i = 0; i < facility_count_; ++i) {
      if (c.costs[i] == 0.0) continue;
      r.terms.emplace_back(var(i, c.period), c.costs[i]);
      if (c.period > 0) r.terms.emplace_back(var(i, c.period - 1), -c.costs[i]);
    }
    r.rhs = c.rhs;
    rows.push_back(std::move(r));
  }
  void lower(const LinearConstraint& c, std::vector<DomainRow>& rows) const {
    DomainRow r;
    for (const auto& term : c.terms)
      r.terms.emplace_back(var(term.facility, term.period), term.coef);
    r.sense = c.sense;
    r.rhs = c.rhs;
    rows.push_back(std::move(r));
  }

  int periods_ = 0;
  int facility_count_ = 0;
  std::vector<UserRecord> users_;
  DomainSpec domain_;
  std::string name_;
};

/// Integer coverage counts I~_j^t, indexed [user][period].
struct CoverageCount {
  std::vector<std::vector<int>> counts;
};

namespace detail {

template <typename M>
void check_dims(const Instance& inst, const M& x, const char* what) {
  if (x.facilities() != inst.facility_count() || x.periods() != inst.periods()) {
    throw std::invalid_argument(std::string(what) + ": solution dimensions do not match instance");
  }
}

}  // namespace detail

inline CoverageCount coverage_counts(const Instance& inst, const Solution& x) {
  detail::check_dims(inst, x, "coverage_counts");
  CoverageCount out;
  out.counts.assign(inst.user_count(), std::vector<int>(inst.periods(), 0));
  for (int j = 0; j < inst.user_count(); ++j) {
    for (int t = 0; t < inst.periods(); ++t) {
      int c = 0;
      for (int i : inst.covering(j, t)) c += x(i, t);
      out.counts[j][t] = c;
    }
  }
  return out;
}

/// I_j^t(x) = sum_i a_ij^t x_i^t for a relaxed x, indexed [user][period].
inline std::vector<std::vector<double>> fractional_coverage_counts(const Instance& inst,
                                                                   const FractionalSolution& x) {
  detail::check_dims(inst, x, "fractional_coverage_counts");
  for (double v : x.values()) {
    if (!(v >= -1e-9 && v <= 1.0 + 1e-9))
      throw std::invalid_argument("fractional_coverage_counts: entry outside [0,1]");
  }
  std::vector<std::vector<double>> out(inst.user_count(),
                                       std::vector<double>(inst.periods(), 0.0));
  for (int j = 0; j < inst.user_count(); ++j) {
    for (int t = 0; t < inst.periods(); ++t) {
      double c = 0.0;
      for (int i : inst.covering(j, t)) c += x(i, t);
      out[j][t] = c;
    }
  }
  return out;
}

/// f(x) = sum_t sum_j min{1, I_j^t(x)} d_j^t.
inline double coverage(const Instance& inst, const Solution& x) {
  const CoverageCount cc = coverage_counts(inst, x);
  double total = 0.0;
  for (int t = 0; t < inst.periods(); ++t) {
    for (int j = 0; j < inst.user_count(); ++j) {
      if (cc.counts[j][t] > 0) total += inst.demand(j, t);
    }
  }
  return total;
}

/// Covered demand in a single period.
inline double period_coverage(const Instance& inst, const Solution& x, int t) {
  detail::check_dims(inst, x, "period_coverage");
  double total = 0.0;
  for (int j = 0; j < inst.user_count(); ++j) {
    for (int i : inst.covering(j, t)) {
      if (x(i, t)) {
        total += inst.demand(j, t);
        break;
      }
    }
  }
  return total;
}

/// The same formula evaluated at a relaxed point.
inline double fractional_coverage(const Instance& inst, const FractionalSolution& x) {
  const auto counts = fractional_coverage_counts(inst, x);
  double total = 0.0;
  for (int t = 0; t < inst.periods(); ++t) {
    for (int j = 0; j < inst.user_count(); ++j) {
      total += std::min(1.0, counts[j][t]) * inst.demand(j, t);
    }
  }
  return total;
}

inline bool row_satisfied(const DomainRow& row, std::span<const double> x, double tol = 1e-9) {
  double lhs = 0.0;
  for (const auto& [k, a] : row.terms) lhs += a * x[k];
  switch (row.sense) {
    case Sense::kLessEqual:
      return lhs <= row.rhs + tol;
    case Sense::kGreaterEqual:
      return lhs >= row.rhs - tol;
    case Sense::kEqual:
      return std::abs(lhs - row.rhs) <= tol;
  }
  return false;
}

/// True iff x satisfies every lowered domain row. Sums of integral
/// coefficients over binaries are exact in double precision.
inline bool check_domain(const Instance& inst, const Solution& x) {
  detail::check_dims(inst, x, "check_domain");
  const FractionalSolution xf = to_fractional(x);
  for (const auto& row : inst.lower_domain()) {
    if (!row_satisfied(row, xf.values())) return false;
  }
  return true;
}

/// Builds a solution from per-period lists of open facilities.
inline Solution make_solution(int facilities, std::vector<std::vector<int>> open_by_period) {
  Solution x(facilities, static_cast<int>(open_by_period.size()));
  for (int t = 0; t < x.periods(); ++t)
    for (int i : open_by_period[t]) x(i, t) = 1;
  return x;
}

}  // namespace dyncover

#endif  // DYNCOVER_MODEL_HPP_
