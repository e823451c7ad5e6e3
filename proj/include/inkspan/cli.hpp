// Copyright 2026 The inkspan Authors
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

#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "inkspan/constant_factor.hpp"
#include "inkspan/error.hpp"
#include "inkspan/exact.hpp"
#include "inkspan/generators.hpp"
#include "inkspan/json_io.hpp"
#include "inkspan/ptas.hpp"
#include "inkspan/relaxation.hpp"

namespace inkspan::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // other module errors, flagged compare rows
  kExitUsage = 2,
  kExitLimit = 3,    // SizeLimit, BudgetExceeded
  kExitNumerical = 4,
};

inline constexpr const char* kCompareHeader = "instance,alg,value,opt,ratio,claimed_factor,wall_ms,violation";

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSizeLimit:
    case ErrorCode::kBudgetExceeded:
      return kExitLimit;
    case ErrorCode::kNumericalFailure:
      return kExitNumerical;
    default:
      return kExitFailure;
  }
}

namespace detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Instance load_instance(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("file not found: " + path);
  return read_instance_file(path);
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out_path);
  f << text;
}

inline std::string format_number(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

struct SolveArgs {
  std::string alg;
  std::string input;
  double eps = 0.5;
  unsigned threads = 1;
  std::string out;
};

inline AlgoResult run_algorithm(const std::string& alg, const Instance& inst, double eps, unsigned threads) {
  if (alg == "exact") return brute_force(inst);
  if (alg == "constant") return solve_constant_factor(inst, {.threads = threads});
  if (alg == "ptas") return solve_ptas(inst, eps, {.threads = threads});
  throw UsageError("unknown algorithm " + alg);
}

inline void cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.input);
  Json j;
  if (a.alg == "lp-strong" || a.alg == "lp-weak") {
    j["algorithm"] = a.alg;
    j["value"] = ::inkspan::detail::number(relaxation_value(inst, a.alg == "lp-strong"));
  } else {
    j = result_to_json(inst, run_algorithm(a.alg, inst, a.eps, a.threads));
  }
  emit(j.dump(2) + "\n", a.out, out);
}

inline void cmd_evaluate(const std::string& input, const std::string& schedule_path, std::ostream& out) {
  const Instance inst = load_instance(input);
  if (!std::filesystem::is_regular_file(schedule_path)) throw UsageError("file not found: " + schedule_path);
  const Schedule s = schedule_from_json(inst, read_json_file(schedule_path));
  const FeasibilityReport rep = check_feasible(inst, s);
  Json j;
  j["value"] = ::inkspan::detail::number(evaluate(inst, s));
  j["feasible"] = rep.feasible;
  j["violations"] = Json::array();
  for (const auto& v : rep.violations) j["violations"].push_back({{"period", v.period}, {"load", v.load}, {"capacity", v.capacity}});
  out << j.dump(2) << "\n";
}

inline std::vector<long long> read_integers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("file not found: " + path);
  std::vector<long long> a;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw Error(ErrorCode::kBadInput, "not an integer: " + tok);
    a.push_back(v);
  }
  return a;
}

inline std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const auto& p : inputs) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::string> here;
      for (const auto& e : std::filesystem::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".json") here.push_back(e.path().string());
      }
      std::sort(here.begin(), here.end());
      files.insert(files.end(), here.begin(), here.end());
    } else if (std::filesystem::is_regular_file(p)) {
      files.push_back(p);
    } else {
      throw UsageError("file not found: " + p);
    }
  }
  return files;
}

struct CompareArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> algs{"constant", "ptas"};
  double eps = 0.5;
  unsigned threads = 1;
  bool timing = false;
  std::string out;
};

// One row per (instance, algorithm).  wall_ms stays empty unless timing is
// requested, so default output is byte-for-byte reproducible.
inline bool cmd_compare(const CompareArgs& a, std::ostream& out) {
  std::ostringstream csv;
  csv << kCompareHeader << "\n";
  bool flagged = false;
  for (const auto& path : expand_inputs(a.inputs)) {
    const Instance inst = load_instance(path);
    const double opt = brute_force(inst).value;
    const std::string name = std::filesystem::path(path).filename().string();
    for (const auto& alg : a.algs) {
      const auto start = std::chrono::steady_clock::now();
      const AlgoResult r = run_algorithm(alg, inst, a.eps, a.threads);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      const double ratio = opt > 0 ? r.value / opt : 1.0;
      const double claimed = r.claimed_factor.value_or(1.0);
      const bool violation = ratio < claimed * (1 - 1e-6) || !check_feasible(inst, r.schedule).feasible;
      flagged = flagged || violation;
      csv << name << ',' << alg << ',' << format_number(r.value) << ',' << format_number(opt) << ','
          << format_number(ratio) << ',' << format_number(claimed) << ','
          << (a.timing ? format_number(ms) : std::string()) << ',' << (violation ? 1 : 0) << "\n";
    }
  }
  emit(csv.str(), a.out, out);
  return !flagged;
}

}  // namespace detail

// Entry point behind the inkspan executable.  Output goes to `out`,
// diagnostics to `err`; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Incremental knapsack solvers and instance generators", "inkspan"};
  app.require_subcommand(1);

  detail::SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run one algorithm on an instance");
  s->add_option("--alg", solve.alg, "exact, constant, ptas, lp-strong or lp-weak")
      ->required()
      ->check(CLI::IsMember({"exact", "constant", "ptas", "lp-strong", "lp-weak"}));
  s->add_option("--input", solve.input, "instance JSON")->required();
  s->add_option("--eps", solve.eps, "PTAS accuracy in (0, 1)")->check(CLI::Range(0.0, 1.0));
  s->add_option("--threads", solve.threads, "worker threads")->check(CLI::PositiveNumber);
  s->add_option("--out", solve.out, "write JSON here instead of stdout");

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->require_subcommand(1);
  std::string gen_out;
  gen->add_option("--out", gen_out, "write JSON here instead of stdout");
  int gap_k = 2, gap_m = 2;
  auto* gap = gen->add_subcommand("gap", "integrality-gap family");
  gap->add_option("--k", gap_k)->required();
  gap->add_option("--m", gap_m)->required();
  std::string partition_file;
  auto* part = gen->add_subcommand("3partition", "3-partition reduction");
  part->add_option("--file", partition_file, "whitespace-separated integers")->required();
  RandomInstanceSpec rnd;
  auto* random = gen->add_subcommand("random", "seeded random instance");
  random->add_option("--n", rnd.items)->required();
  random->add_option("--t", rnd.horizon)->required();
  random->add_option("--seed", rnd.seed);
  random->add_option("--fill", rnd.fill_factor);
  random->add_option("--rate", rnd.discount_rate, "discount rate r, Δ_t = e^{-rt}");
  for (auto* sub : {gap, part, random}) sub->add_option("--out", gen_out, "write JSON here instead of stdout");

  std::string eval_input, eval_schedule;
  auto* ev = app.add_subcommand("evaluate", "Value and feasibility of a schedule");
  ev->add_option("--input", eval_input, "instance JSON")->required();
  ev->add_option("--schedule", eval_schedule, "schedule JSON")->required();

  detail::CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Ratio table against the exact optimum");
  compare->add_option("inputs", cmp.inputs, "instance files or directories");
  compare->add_option("--alg", cmp.algs, "algorithms (repeatable)")
      ->check(CLI::IsMember({"exact", "constant", "ptas"}));
  compare->add_option("--eps", cmp.eps)->check(CLI::Range(0.0, 1.0));
  compare->add_option("--threads", cmp.threads)->check(CLI::PositiveNumber);
  compare->add_flag("--timing", cmp.timing, "fill the wall_ms column");
  compare->add_option("--out", cmp.out, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*s) {
      detail::cmd_solve(solve, out);
    } else if (*gen) {
      Instance inst;
      if (*gap) {
        inst = gen_gap_family(gap_k, gap_m);
      } else if (*part) {
        ThreePartitionInstance p = gen_3partition(detail::read_integers(partition_file));
        if (!p.in_range) err << "warning: some integers fall outside (B/4, B/2)\n";
        inst = std::move(p.instance);
      } else {
        inst = gen_random(rnd);
      }
      detail::emit(instance_to_json(inst).dump(2) + "\n", gen_out, out);
    } else if (*ev) {
      detail::cmd_evaluate(eval_input, eval_schedule, out);
    } else if (*compare) {
      if (!detail::cmd_compare(cmp, out)) {
        err << "ratio below claimed factor or infeasible schedule flagged\n";
        return kExitFailure;
      }
    }
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitOk;
}

}  // namespace inkspan::cli
