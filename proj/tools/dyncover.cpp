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

// dyncover command line: generate, solve, evaluate, compare.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dyncover/dyncover.hpp"

namespace {

using namespace dyncover;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct MethodFlags {
  std::string method = "abbc";
  std::string cuts;
  bool multicut = false;
  bool partial = false;
  bool bdd = false;
  std::string sub = "subd";
  std::string sep = "sepd";
  std::string trigger = "all";
  int kappa = 2;
  double time_limit = kInfinity;
  double sp_time_limit = 60.0;
};

const std::map<std::string, GammaVariant> kCuts = {{"b0", GammaVariant::kB0},
                                                   {"b1", GammaVariant::kB1},
                                                   {"b2", GammaVariant::kB2},
                                                   {"pareto", GammaVariant::kParetoB1}};

void AddMethodOptions(CLI::App* app, MethodFlags& f) {
  app->add_option("--cuts", f.cuts, "Gamma set for Benders cuts")
      ->check(CLI::IsMember({"b0", "b1", "b2", "pareto"}));
  app->add_flag("--multicut", f.multicut, "one theta per period");
  app->add_flag("--partial", f.partial, "keep single-facility users in the main problem");
  app->add_flag("--bdd", f.bdd, "dual decomposition cuts at the root");
  app->add_option("--sub", f.sub, "restricted subproblem solver")->check(CLI::IsMember({"subd", "subb"}));
  app->add_option("--sep", f.sep, "neighborhood separation")->check(CLI::IsMember({"sepd", "sepb"}));
  app->add_option("--sepb-trigger", f.trigger, "SepB branching trigger")
      ->check(CLI::IsMember({"all", "improving"}));
  app->add_option("--kappa", f.kappa, "local branching radius")->check(CLI::PositiveNumber);
  app->add_option("--time-limit", f.time_limit, "wall-clock limit in seconds")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--sp-time-limit", f.sp_time_limit, "per-subproblem limit in seconds")
      ->check(CLI::NonNegativeNumber);
}

SolveResult RunMethod(const Instance& inst, const std::string& method, const MethodFlags& f) {
  SolverOptions opts;
  opts.time_limit_seconds = f.time_limit;
  if (method == "greedy") return solve_greedy(inst);
  if (method == "bc") return solve_bc(inst, opts);
  if (method == "ubbc") {
    if (f.cuts.empty() && !f.multicut && !f.partial && !f.bdd) return solve_ubbc(inst, opts);
    // Explicit selections on top of the plain configuration.
    AbbcFeatures feat{f.multicut, f.cuts == "pareto", f.partial, false, false, f.bdd};
    opts.cuts = f.cuts.empty() ? GammaVariant::kB1 : kCuts.at(f.cuts);
    SolveResult r = solve_abbc(inst, feat, opts);
    r.method = "ubbc";
    return r;
  }
  if (method == "abbc") {
    AbbcFeatures feat;
    if (!f.cuts.empty() || f.multicut || f.partial) {
      feat.multicut = f.multicut;
      feat.partial = f.partial;
      feat.pareto = f.cuts.empty() || f.cuts == "pareto";
      if (!f.cuts.empty()) opts.cuts = kCuts.at(f.cuts);
    }
    feat.bdd = f.bdd;
    return solve_abbc(inst, feat, opts);
  }
  if (method == "lb") {
    LbFeatures feat;
    feat.sub = f.sub == "subb" ? SubMode::kSubB : SubMode::kSubD;
    feat.sep = f.sep == "sepb" ? SepMode::kSepB : SepMode::kSepD;
    feat.trigger = f.trigger == "improving" ? SepBTrigger::kImproving : SepBTrigger::kAll;
    feat.kappa = f.kappa;
    feat.subproblem_time_limit = f.sp_time_limit;
    return solve_lb(inst, feat, opts);
  }
  throw std::invalid_argument("unknown method " + method);
}

bool Failed(const SolveResult& r) { return r.status == MilpStatus::kInfeasible; }

int Generate(const GeneratorParams& p, const std::string& domain, const std::string& out) {
  GeneratorParams q = p;
  q.domain = domain == "knapsack" ? DomainTemplate::kKnapsack
             : domain == "ev"     ? DomainTemplate::kEvStyle
                                  : DomainTemplate::kCardinality;
  const std::string text = write_instance(generate_instance(q));
  if (out.empty()) {
    std::cout << text;
  } else {
    WriteFile(out, text);
  }
  return 0;
}

int Solve(const std::string& path, const MethodFlags& f, const std::string& csv) {
  const Instance inst = parse_instance(ReadFile(path));
  const SolveResult r = RunMethod(inst, f.method, f);
  const std::string row = write_result(r);
  if (!csv.empty()) WriteFile(csv, std::string(result_csv_header()) + "\n" + row + "\n");
  std::cout << "status: " << to_string(r.status) << "\n";
  if (r.solution) {
    std::cout << "objective: " << detail::format_number(r.objective) << "\n";
    std::cout << "solution: " << write_solution(*r.solution);
  }
  std::cout << "bound: " << detail::format_number(r.bound) << "\n";
  std::cout << "csv: " << row << "\n";
  return Failed(r) ? 1 : 0;
}

int Evaluate(const std::string& path, const std::string& solution) {
  const Instance inst = parse_instance(ReadFile(path));
  const Solution x = parse_solution(ReadFile(solution), inst);
  std::cout << detail::format_number(coverage(inst, x)) << "\n";
  if (!check_domain(inst, x)) {
    std::cerr << "warning: solution violates the domain constraints\n";
    return 1;
  }
  return 0;
}

int Compare(const std::string& path, const std::string& methods, const MethodFlags& f,
            const std::string& csv) {
  const Instance inst = parse_instance(ReadFile(path));
  std::string text = std::string(result_csv_header()) + "\n";
  bool failed = false;
  std::stringstream ss(methods);
  for (std::string m; std::getline(ss, m, ',');) {
    if (m.empty()) continue;
    const SolveResult r = RunMethod(inst, m, f);
    failed = failed || Failed(r);
    text += write_result(r) + "\n";
  }
  if (csv.empty()) {
    std::cout << text;
  } else {
    WriteFile(csv, text);
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic maximum covering location solver"};
  app.require_subcommand(1);

  GeneratorParams gp;
  std::string domain = "cardinality", out;
  auto* gen = app.add_subcommand("generate", "write a random instance");
  gen->add_option("--seed", gp.seed, "random seed");
  gen->add_option("--users", gp.user_count, "number of users")->check(CLI::NonNegativeNumber);
  gen->add_option("--facilities", gp.facility_count, "number of facilities")->check(CLI::PositiveNumber);
  gen->add_option("--periods", gp.periods, "number of periods")->check(CLI::PositiveNumber);
  gen->add_option("--domain", domain, "domain template")
      ->check(CLI::IsMember({"cardinality", "knapsack", "ev"}));
  gen->add_option("--radius", gp.radius, "coverage radius in the unit square");
  gen->add_option("--growth", gp.growth, "per-period demand growth factor");
  gen->add_option("--cardinality", gp.cardinality, "open facilities per period");
  gen->add_option("--budget", gp.budget, "per-period budget (ev)");
  gen->add_option("--out", out, "output file (stdout if omitted)");

  MethodFlags sf;
  std::string solve_path, solve_csv;
  auto* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("instance", solve_path, "instance JSON")->required();
  solve->add_option("--method", sf.method, "solver")
      ->check(CLI::IsMember({"greedy", "bc", "ubbc", "abbc", "lb"}));
  AddMethodOptions(solve, sf);
  solve->add_option("--csv", solve_csv, "write a result CSV");

  std::string eval_path, eval_solution;
  auto* eval = app.add_subcommand("evaluate", "coverage of a given solution");
  eval->add_option("instance", eval_path, "instance JSON")->required();
  eval->add_option("--solution", eval_solution, "solution JSON")->required();

  MethodFlags cf;
  std::string cmp_path, cmp_methods = "greedy,bc,ubbc,abbc,lb", cmp_csv;
  auto* cmp = app.add_subcommand("compare", "run several methods, one CSV row each");
  cmp->add_option("instance", cmp_path, "instance JSON")->required();
  cmp->add_option("--methods", cmp_methods, "comma-separated methods");
  AddMethodOptions(cmp, cf);
  cmp->add_option("--csv", cmp_csv, "output CSV (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*gen) return Generate(gp, domain, out);
    if (*solve) return Solve(solve_path, sf, solve_csv);
    if (*eval) return Evaluate(eval_path, eval_solution);
    if (*cmp) {
      std::stringstream ss(cmp_methods);
      for (std::string m; std::getline(ss, m, ',');)
        if (!m.empty() && m != "greedy" && m != "bc" && m != "ubbc" && m != "abbc" && m != "lb") {
          std::cerr << "unknown method " << m << "\n\n" << cmp->help();
          return 2;
        }
      return Compare(cmp_path, cmp_methods, cf, cmp_csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
