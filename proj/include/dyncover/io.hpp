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

// Instance files, result CSV rows and the seeded instance generator.
//
// Instance schema (periods are 0-based):
//   {"name": str (optional), "periods": T, "facility_count": I,
//    "users": [{"demands": [d x T], "coverage": [[i...] x T]}],
//    "domain": {"constraints": [record...]}}
// Records carry a "type" tag:
//   cardinality {period, limit}        knapsack {terms: [[i,t,coef]], rhs}
//   precedence {before: [i,t], after: [i,t]}   persistence {}
//   budget {period, costs: [c x I], rhs}       linear {terms, sense: "<="|"="|">=", rhs}

#ifndef DYNCOVER_IO_HPP_
#define DYNCOVER_IO_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyncover/model.hpp"
#include "dyncover/random.hpp"
#include "dyncover/solve_result.hpp"
#include "json.hpp"

namespace dyncover {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

inline const char* sense_token(Sense s) {
  switch (s) {
    case Sense::kLessEqual:
      return "<=";
    case Sense::kEqual:
      return "=";
    case Sense::kGreaterEqual:
      return ">=";
  }
  return "?";
}

inline std::string terms_json(const std::vector<LinearTerm>& terms) {
  std::string out = "[";
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k) out += ", ";
    out += "[" + std::to_string(terms[k].facility) + ", " + std::to_string(terms[k].period) +
           ", " + format_number(terms[k].coef) + "]";
  }
  return out + "]";
}

struct ConstraintWriter {
  std::string operator()(const Cardinality& c) const {
    return R"({"type": "cardinality", "period": )" + std::to_string(c.period) +
           ", \"limit\": " + format_number(c.limit) + "}";
  }
  std::string operator()(const Knapsack& c) const {
    return R"({"type": "knapsack", "terms": )" + terms_json(c.terms) +
           ", \"rhs\": " + format_number(c.rhs) + "}";
  }
  std::string operator()(const Precedence& c) const {
    return R"({"type": "precedence", "before": [)" + std::to_string(c.before.facility) + ", " +
           std::to_string(c.before.period) + "], \"after\": [" +
           std::to_string(c.after.facility) + ", " + std::to_string(c.after.period) + "]}";
  }
  std::string operator()(const Persistence&) const { return R"({"type": "persistence"})"; }
  std::string operator()(const Budget& c) const {
    std::string costs = "[";
    for (std::size_t k = 0; k < c.costs.size(); ++k)
      costs += (k ? ", " : "") + format_number(c.costs[k]);
    return R"({"type": "budget", "period": )" + std::to_string(c.period) + ", \"costs\": " +
           costs + "], \"rhs\": " + format_number(c.rhs) + "}";
  }
  std::string operator()(const LinearConstraint& c) const {
    return R"({"type": "linear", "terms": )" + terms_json(c.terms) + ", \"sense\": \"" +
           sense_token(c.sense) + "\", \"rhs\": " + format_number(c.rhs) + "}";
  }
};

// Typed access to a JSON node with the path used in error messages.
class Node {
 public:
  Node(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_ + ": " + what);
  }
  Node at(const std::string& key) const {
    if (!j_.is_object()) fail("expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) fail("missing key \"" + key + "\"");
    return Node(*it, path_ + "." + key);
  }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }
  Node at(std::size_t k) const { return Node(j_.at(k), path_ + "[" + std::to_string(k) + "]"); }
  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }
  int as_int() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<int>();
  }
  double as_number() const {
    if (!j_.is_number()) fail("expected a number");
    return j_.get<double>();
  }
  std::string as_string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  const std::string& path() const { return path_; }

 private:
  const nlohmann::json& j_;
  std::string path_;
};

inline std::vector<LinearTerm> parse_terms(const Node& n) {
  std::vector<LinearTerm> terms;
  for (std::size_t k = 0; k < n.size(); ++k) {
    const Node e = n.at(k);
    if (e.size() != 3) e.fail("expected [facility, period, coef]");
    terms.push_back({e.at(0).as_int(), e.at(1).as_int(), e.at(2).as_number()});
  }
  return terms;
}

inline VarRef parse_ref(const Node& n) {
  if (n.size() != 2) n.fail("expected [facility, period]");
  return {n.at(0).as_int(), n.at(1).as_int()};
}

inline DomainConstraint parse_constraint(const Node& n) {
  const std::string type = n.at("type").as_string();
  if (type == "cardinality") return Cardinality{n.at("period").as_int(), n.at("limit").as_number()};
  if (type == "knapsack") return Knapsack{parse_terms(n.at("terms")), n.at("rhs").as_number()};
  if (type == "precedence") return Precedence{parse_ref(n.at("before")), parse_ref(n.at("after"))};
  if (type == "persistence") return Persistence{};
  if (type == "budget") {
    Budget b;
    b.period = n.at("period").as_int();
    const Node costs = n.at("costs");
    for (std::size_t k = 0; k < costs.size(); ++k) b.costs.push_back(costs.at(k).as_number());
    b.rhs = n.at("rhs").as_number();
    return b;
  }
  if (type == "linear") {
    LinearConstraint c;
    c.terms = parse_terms(n.at("terms"));
    const std::string s = n.at("sense").as_string();
    if (s == "<=") {
      c.sense = Sense::kLessEqual;
    } else if (s == "=") {
      c.sense = Sense::kEqual;
    } else if (s == ">=") {
      c.sense = Sense::kGreaterEqual;
    } else {
      n.at("sense").fail("unknown sense \"" + s + "\"");
    }
    c.rhs = n.at("rhs").as_number();
    return c;
  }
  n.at("type").fail("unknown constraint type \"" + type + "\"");
}

}  // namespace detail

/// Canonical text: fixed key order, numbers with 17 significant digits.
inline std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "{\n";
  if (!inst.name().empty()) out << "  \"name\": " << detail::json_string(inst.name()) << ",\n";
  out << "  \"periods\": " << inst.periods() << ",\n";
  out << "  \"facility_count\": " << inst.facility_count() << ",\n";
  out << "  \"users\": [";
  for (int j = 0; j < inst.user_count(); ++j) {
    const UserRecord& u = inst.user(j);
    out << (j ? ",\n    " : "\n    ") << "{\"demands\": [";
    for (int t = 0; t < inst.periods(); ++t)
      out << (t ? ", " : "") << detail::format_number(u.demands[t]);
    out << "], \"coverage\": [";
    for (int t = 0; t < inst.periods(); ++t) {
      out << (t ? ", " : "") << "[";
      for (std::size_t k = 0; k < u.covering[t].size(); ++k)
        out << (k ? ", " : "") << u.covering[t][k];
      out << "]";
    }
    out << "]}";
  }
  out << (inst.user_count() ? "\n  ],\n" : "],\n");
  out << "  \"domain\": {\"constraints\": [";
  const auto& cs = inst.domain().constraints;
  for (std::size_t k = 0; k < cs.size(); ++k)
    out << (k ? ",\n    " : "\n    ") << std::visit(detail::ConstraintWriter{}, cs[k]);
  out << (cs.empty() ? "]}\n" : "\n  ]}\n");
  out << "}\n";
  return out.str();
}

/// Throws ParseError with a line number for syntax errors and a key path otherwise.
inline Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + pos, '\n');
    throw ParseError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  const detail::Node root(j, "$");
  const int periods = root.at("periods").as_int();
  const int facilities = root.at("facility_count").as_int();
  if (periods <= 0) root.at("periods").fail("must be positive");
  if (facilities <= 0) root.at("facility_count").fail("must be positive");

  std::vector<UserRecord> users;
  const detail::Node us = root.at("users");
  for (std::size_t k = 0; k < us.size(); ++k) {
    const detail::Node u = us.at(k);
    UserRecord rec;
    const detail::Node ds = u.at("demands");
    if (static_cast<int>(ds.size()) != periods) ds.fail("expected T = " + std::to_string(periods) + " demands");
    for (int t = 0; t < periods; ++t) {
      const double d = ds.at(t).as_number();
      if (!(d > 0.0)) ds.at(t).fail("demand must satisfy d_j^t > 0");
      rec.demands.push_back(d);
    }
    const detail::Node cs = u.at("coverage");
    if (static_cast<int>(cs.size()) != periods) cs.fail("expected T = " + std::to_string(periods) + " coverage lists");
    for (int t = 0; t < periods; ++t) {
      const detail::Node c = cs.at(t);
      std::vector<int> list;
      for (std::size_t q = 0; q < c.size(); ++q) {
        const int i = c.at(q).as_int();
        if (i < 0 || i >= facilities) c.at(q).fail("facility index out of range");
        list.push_back(i);
      }
      rec.covering.push_back(std::move(list));
    }
    users.push_back(std::move(rec));
  }

  DomainSpec domain;
  const detail::Node cons = root.at("domain").at("constraints");
  for (std::size_t k = 0; k < cons.size(); ++k) domain.constraints.push_back(detail::parse_constraint(cons.at(k)));

  const std::string name = root.has("name") ? root.at("name").as_string() : std::string{};
  try {
    return Instance(periods, facilities, std::move(users), std::move(domain), name);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("$: ") + e.what());
  }
}

/// Solution file: {"x": [[0/1 per facility] per period]}.
inline Solution parse_solution(const std::string& text, const Instance& inst) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed solution JSON (") + e.what() + ")");
  }
  const detail::Node x = detail::Node(j, "$").at("x");
  if (static_cast<int>(x.size()) != inst.periods()) x.fail("expected one row per period");
  Solution out(inst.facility_count(), inst.periods());
  for (int t = 0; t < inst.periods(); ++t) {
    const detail::Node row = x.at(t);
    if (static_cast<int>(row.size()) != inst.facility_count()) row.fail("expected one entry per facility");
    for (int i = 0; i < inst.facility_count(); ++i) {
      const int v = row.at(i).as_int();
      if (v != 0 && v != 1) row.at(i).fail("entries must be 0 or 1");
      out(i, t) = static_cast<std::uint8_t>(v);
    }
  }
  return out;
}

inline std::string write_solution(const Solution& x) {
  std::string out = "{\"x\": [";
  for (int t = 0; t < x.periods(); ++t) {
    out += t ? ", [" : "[";
    for (int i = 0; i < x.facilities(); ++i) out += (i ? ", " : "") + std::to_string(x(i, t));
    out += "]";
  }
  return out + "]}\n";
}

inline const char* result_csv_header() {
  return "instance,method,features,status,objective,bound,gap_percent,nodes,lazy_cuts,user_cuts,"
         "restricted_subproblems,diversified_subproblems,branches,wall_seconds";
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace detail

/// One CSV row (no trailing newline). gap_percent has two decimals.
inline std::string write_result(const SolveResult& r) {
  std::string row;
  row += detail::csv_field(r.instance) + ",";
  row += detail::csv_field(r.method) + ",";
  row += detail::csv_field(r.features) + ",";
  row += std::string(to_string(r.status)) + ",";
  row += (r.solution ? detail::format_number(r.objective) : std::string("")) + ",";
  row += (std::isinf(r.bound) ? detail::fixed(r.bound, 0) : detail::format_number(r.bound)) + ",";
  row += detail::fixed(r.gap * 100.0, 2) + ",";
  row += std::to_string(r.nodes) + "," + std::to_string(r.lazy_cuts) + "," +
         std::to_string(r.user_cuts) + "," + std::to_string(r.restricted_subproblems) + "," +
         std::to_string(r.diversified_subproblems) + "," + std::to_string(r.branches) + ",";
  row += detail::fixed(r.wall_seconds, 3);
  return row;
}

enum class DomainTemplate { kCardinality, kKnapsack, kEvStyle };

struct GeneratorParams {
  std::uint64_t seed = 1;
  int periods = 2;
  int facility_count = 5;
  int user_count = 20;
  double radius = 0.3;
  double demand_low = 1.0;
  double demand_high = 10.0;
  double growth = 1.0;
  DomainTemplate domain = DomainTemplate::kCardinality;
  int cardinality = 2;    // open facilities per period
  double budget = 4.0;    // ev-style per-period budget
};

/// Demands are rounded to multiples of 1/1024 (at least 1/1024), so sums of
/// a few thousand of them are exact in double precision.
inline Instance generate_instance(const GeneratorParams& p) {
  if (p.periods <= 0 || p.facility_count <= 0 || p.user_count < 0)
    throw std::invalid_argument("generate_instance: counts must be positive");
  if (!(p.radius > 0) || !(p.demand_low > 0) || p.demand_high < p.demand_low || !(p.growth > 0))
    throw std::invalid_argument("generate_instance: invalid radius, demand range or growth");
  Xoshiro256 rng(p.seed);
  auto quantize = [](double d) { return std::max(1.0, std::round(d * 1024.0)) / 1024.0; };

  std::vector<std::pair<double, double>> fac(p.facility_count);
  for (auto& f : fac) f = {rng.uniform(), rng.uniform()};
  std::vector<UserRecord> users;
  for (int j = 0; j < p.user_count; ++j) {
    const double ux = rng.uniform();
    const double uy = rng.uniform();
    const double base = p.demand_low + (p.demand_high - p.demand_low) * rng.uniform();
    std::vector<int> cov;
    for (int i = 0; i < p.facility_count; ++i)
      if (std::hypot(ux - fac[i].first, uy - fac[i].second) <= p.radius) cov.push_back(i);
    UserRecord u;
    for (int t = 0; t < p.periods; ++t) {
      u.demands.push_back(quantize(base * std::pow(p.growth, t)));
      u.covering.push_back(cov);
    }
    users.push_back(std::move(u));
  }

  DomainSpec domain;
  switch (p.domain) {
    case DomainTemplate::kCardinality:
      for (int t = 0; t < p.periods; ++t) domain.constraints.push_back(Cardinality{t, double(p.cardinality)});
      break;
    case DomainTemplate::kKnapsack:
      for (int t = 0; t < p.periods; ++t) {
        Knapsack k;
        double total = 0;
        for (int i = 0; i < p.facility_count; ++i) {
          const double w = rng.uniform_int(1, 5);
          k.terms.push_back({i, t, w});
          total += w;
        }
        k.rhs = std::floor(total * 0.4);
        domain.constraints.push_back(std::move(k));
      }
      break;
    case DomainTemplate::kEvStyle: {
      // Facilities 2k and 2k+1 form an outlet pair: the second outlet needs the first.
      domain.constraints.push_back(Persistence{});
      std::vector<double> costs(p.facility_count);
      for (auto& c : costs) c = rng.uniform_int(1, 3);
      for (int t = 0; t < p.periods; ++t) domain.constraints.push_back(Budget{t, costs, p.budget});
      for (int t = 0; t < p.periods; ++t)
        for (int i = 0; i + 1 < p.facility_count; i += 2)
          domain.constraints.push_back(Precedence{{i, t}, {i + 1, t}});
      break;
    }
  }
  return Instance(p.periods, p.facility_count, std::move(users), std::move(domain),
                  "gen-" + std::to_string(p.seed));
}

}  // namespace dyncover

#endif  // DYNCOVER_IO_HPP_
