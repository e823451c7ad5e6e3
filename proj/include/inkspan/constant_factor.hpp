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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "inkspan/error.hpp"
#include "inkspan/exact.hpp"
#include "inkspan/instance.hpp"
#include "inkspan/lp.hpp"
#include "inkspan/parallel.hpp"
#include "inkspan/relaxation.hpp"
#include "inkspan/split.hpp"

namespace inkspan {

// Entries within this distance of 0 or 1 count as integral.
inline constexpr double kIntegralityTolerance = 1e-6;
// Relative slack on the stage-two value floor V*/3.
inline constexpr double kStageTwoSlack = 1e-9;
inline constexpr double kDefaultPerturbation = 1e-9;

// One disjunct D(t̄, t̆, h): item `anchor` enters at `anchor_entry` and is a
// highest-value item in the knapsack at `split_period`.
struct DisjunctSpec {
  Period split_period = 2;  // t̄, strictly inside (1, T)
  Period anchor_entry = 1;  // t̆ <= t̄
  std::size_t anchor = 0;   // h

  friend bool operator==(const DisjunctSpec&, const DisjunctSpec&) = default;
};

// N×T row-major matrix, laid out like time_indexed_column().
using PeriodMatrix = std::vector<double>;

struct StageResult {
  double v_star = 0.0;                // optimum of the stage-one relaxation
  double stage_two_objective = 0.0;   // objective of x_tilde
  double lp_objective = 0.0;          // stage-two objective before exchanges
  PeriodMatrix x_tilde;               // stage-two vertex after defractionalize
  Schedule x_breve;                   // round-down of x_tilde
  std::size_t exchanges = 0;
};

inline bool is_fractional(double v) {
  return v > kIntegralityTolerance && v < 1.0 - kIntegralityTolerance;
}

inline std::size_t max_fractional_per_period(const PeriodMatrix& x, std::size_t items, int horizon) {
  std::size_t worst = 0;
  for (Period t = 1; t <= horizon; ++t) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < items; ++i) count += is_fractional(x[time_indexed_column(i, t, horizon)]);
    worst = std::max(worst, count);
  }
  return worst;
}

inline double time_indexed_objective(const Instance& inst, const PeriodMatrix& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < inst.item_count(); ++i) {
    for (Period t = 1; t <= inst.horizon(); ++t) {
      total += inst.value(i) * inst.discount(t) * x[time_indexed_column(i, t, inst.horizon())];
    }
  }
  return total;
}

// Insert the best single-period knapsack at capacity B_t̄ at period t̄ and
// keep it until T.
inline AlgoResult replicated_solution(const Instance& inst, Period split_period,
                                      std::size_t item_cap = kDefaultKnapsackItemCap) {
  if (split_period < 1 || split_period > inst.horizon()) {
    throw Error(ErrorCode::kBadInput, "replicated period out of range");
  }
  const KnapsackSolution ks =
      knapsack_exact(inst.values(), inst.weights(), inst.capacity(split_period), item_cap);
  AlgoResult result;
  result.schedule = Schedule(inst.item_count());
  for (std::size_t i : ks.items) result.schedule.insert(i, split_period);
  result.value = evaluate_with(inst, result.schedule, inst.original_values());
  result.algorithm = "replicated";
  result.witness.emplace_back("t_bar", std::to_string(split_period));
  return result;
}

namespace detail {

inline void check_spec(const Instance& inst, const DisjunctSpec& spec) {
  if (spec.split_period <= 1 || spec.split_period >= inst.horizon() || spec.anchor_entry < 1 ||
      spec.anchor_entry > spec.split_period || spec.anchor >= inst.item_count()) {
    throw Error(ErrorCode::kBadInput, "disjunct spec outside 1 < t_bar < T, 1 <= t_breve <= t_bar");
  }
}

}  // namespace detail

// Relaxation of D(t̄, t̆, h).  Stage one carries the "one third before and
// after t̄" rows relative to the total value; stage two replaces them with
// the absolute floors V*/3 (less a relative slack of kStageTwoSlack).
inline LinearProgram build_disjunct_lp(const Instance& inst, const DisjunctSpec& spec, int stage,
                                       std::optional<double> v_star = std::nullopt) {
  detail::check_spec(inst, spec);
  if (stage != 1 && stage != 2) throw Error(ErrorCode::kBadInput, "stage must be 1 or 2");
  if (stage == 2 && !v_star) throw Error(ErrorCode::kBadInput, "stage two needs V*");

  const int horizon = inst.horizon();
  const std::size_t h = spec.anchor;
  LinearProgram lp = time_indexed_lp(inst, inst.values());
  lp.fix(time_indexed_column(h, spec.anchor_entry, horizon), 1.0);
  if (spec.anchor_entry >= 2) lp.fix(time_indexed_column(h, spec.anchor_entry - 1, horizon), 0.0);
  for (std::size_t i = 0; i < inst.item_count(); ++i) {
    if (inst.value(i) > inst.value(h)) lp.fix(time_indexed_column(i, spec.split_period, horizon), 0.0);
  }

  const std::size_t cols = lp.variable_count();
  std::vector<double> late(cols, 0.0);
  std::vector<double> early(cols, 0.0);
  for (std::size_t i = 0; i < inst.item_count(); ++i) {
    for (Period t = 1; t <= horizon; ++t) {
      const double c = inst.value(i) * inst.discount(t);
      (t >= spec.split_period ? late : early)[time_indexed_column(i, t, horizon)] = c;
    }
  }
  if (stage == 1) {
    std::vector<double> late_row(cols), early_row(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      const double total = late[j] + early[j];
      late_row[j] = late[j] - total / 3.0;
      early_row[j] = early[j] - total / 3.0;
    }
    lp.add_row(std::move(late_row), Relation::kGreaterEqual, 0.0);
    lp.add_row(std::move(early_row), Relation::kGreaterEqual, 0.0);
  } else {
    const double floor = *v_star / 3.0 * (1.0 - kStageTwoSlack);
    lp.add_row(std::move(late), Relation::kGreaterEqual, floor);
    lp.add_row(std::move(early), Relation::kGreaterEqual, floor);
  }
  return lp;
}

struct DefractionalizeStats {
  std::size_t exchanges = 0;
};

// Mass exchange between two fractional items i, j of one period with
// v_i/w_i > v_j/w_j: lower x_j by θ and raise x_i by (w_j/w_i)θ over a period
// window [a, t2] so that every capacity row is unchanged and every period's
// value goes up.  t2 ends i's plateau through the fractional period; a is the
// first period j is positive, moved later when i is pinned to zero up to t̄.
// Repeats until every period has at most one fractional entry or no exchange
// applies.  The anchor's row is never touched.
inline PeriodMatrix defractionalize(PeriodMatrix x, const Instance& inst, const DisjunctSpec& spec,
                                    DefractionalizeStats* stats = nullptr) {
  const std::size_t n = inst.item_count();
  const int horizon = inst.horizon();
  auto at = [&](std::size_t i, Period t) -> double& { return x[time_indexed_column(i, t, horizon)]; };
  auto get = [&](std::size_t i, Period t) { return t < 1 ? 0.0 : at(i, t); };
  constexpr double kTiny = 1e-12;

  auto ratio = [&](std::size_t i) { return inst.value(i) / inst.weight(i); };
  // Last period at which item i is forced to zero by the t̄ pin.
  auto pinned_through = [&](std::size_t i) {
    return inst.value(i) > inst.value(spec.anchor) ? spec.split_period : 0;
  };

  auto try_exchange = [&](std::size_t i, std::size_t j, Period frac_period) {
    const double level = at(i, frac_period);
    Period t2 = frac_period;
    while (t2 < horizon && std::abs(at(i, t2 + 1) - level) <= kTiny) ++t2;
    const double delta = t2 < horizon ? at(i, t2 + 1) - level : 1.0 - level;
    if (delta <= kTiny) return false;

    Period a = 0;
    for (Period t = 1; t <= frac_period; ++t) {
      if (at(j, t) > kTiny) {
        a = t;
        break;
      }
    }
    if (a == 0) return false;
    if (a <= pinned_through(i)) {
      a = 0;
      for (Period t = frac_period; t > pinned_through(i); --t) {
        if (get(j, t) - get(j, t - 1) > kTiny) {
          a = t;
          break;
        }
      }
      if (a == 0) return false;
    }
    const double step = get(j, a) - get(j, a - 1);
    const double by_i = inst.weight(i) / inst.weight(j) * delta;
    const double theta = std::min(by_i, step);
    if (theta <= kTiny) return false;

    const double gain = inst.weight(j) / inst.weight(i) * theta;
    const double j_floor = get(j, a - 1);
    const double i_ceiling = t2 < horizon ? at(i, t2 + 1) : 1.0;
    for (Period t = a; t <= t2; ++t) {
      at(j, t) -= theta;
      at(i, t) += gain;
    }
    // Land exactly on the bound that limited θ.
    if (theta == step) at(j, a) = j_floor;
    if (theta == by_i) {
      for (Period t = frac_period; t <= t2; ++t) at(i, t) = i_ceiling;
    }
    for (Period t = a; t <= t2; ++t) {
      for (std::size_t k : {i, j}) {
        double& v = at(k, t);
        if (std::abs(v) <= kTiny) v = 0.0;
        if (std::abs(v - 1.0) <= kTiny) v = 1.0;
      }
    }
    return true;
  };

  const std::size_t cap = 64 * (n + 1) * static_cast<std::size_t>(horizon) * static_cast<std::size_t>(horizon);
  std::size_t exchanges = 0;
  for (bool progress = true; progress && exchanges < cap;) {
    progress = false;
    for (Period t = 1; t <= horizon && !progress; ++t) {
      std::vector<std::size_t> frac;
      for (std::size_t i = 0; i < n; ++i) {
        if (i != spec.anchor && is_fractional(at(i, t))) frac.push_back(i);
      }
      if (frac.size() < 2) continue;
      std::stable_sort(frac.begin(), frac.end(), [&](std::size_t a, std::size_t b) { return ratio(a) > ratio(b); });
      for (std::size_t p = 0; p < frac.size() && !progress; ++p) {
        for (std::size_t q = frac.size(); q-- > p + 1 && !progress;) {
          if (ratio(frac[p]) > ratio(frac[q]) && try_exchange(frac[p], frac[q], t)) {
            progress = true;
            ++exchanges;
          }
        }
      }
    }
  }
  if (stats) stats->exchanges = exchanges;
  return x;
}

// Componentwise floor: an item is in the knapsack from the first period
// where its entry is within kIntegralityTolerance of 1.
inline Schedule round_down(const PeriodMatrix& x, std::size_t items, int horizon) {
  Schedule s(items);
  for (std::size_t i = 0; i < items; ++i) {
    for (Period t = 1; t <= horizon; ++t) {
      if (x[time_indexed_column(i, t, horizon)] >= 1.0 - kIntegralityTolerance) {
        s.insert(i, t);
        break;
      }
    }
  }
  return s;
}

// Stage one gives V*; stage two re-optimizes under the V*/3 floors, its vertex
// is defractionalized and rounded down.  Expects distinct value/weight ratios
// (see perturb_values).  Returns nullopt when the disjunct is empty.
inline std::optional<StageResult> solve_two_stage(const Instance& inst, const DisjunctSpec& spec) {
  const LpOutcome first = solve_lp(build_disjunct_lp(inst, spec, 1));
  if (!first.optimal()) return std::nullopt;
  const LpOutcome second = solve_lp(build_disjunct_lp(inst, spec, 2, first.objective));
  if (!second.optimal()) return std::nullopt;

  StageResult r;
  r.v_star = first.objective;
  r.lp_objective = second.objective;
  DefractionalizeStats stats;
  r.x_tilde = defractionalize(second.x, inst, spec, &stats);
  r.exchanges = stats.exchanges;
  r.stage_two_objective = time_indexed_objective(inst, r.x_tilde);
  r.x_breve = round_down(r.x_tilde, inst.item_count(), inst.horizon());
  return r;
}

// Per-disjunct record for property checks.  Values are in the perturbed
// instance's values, the ones the LPs optimize.
struct DisjunctTrace {
  DisjunctSpec spec;
  StageResult stage;
  double rounded_value = 0.0;
  double round_down_factor = 0.0;  // (1/6)·min{1, Σ_{t≥t̄}Δ / Σ_{t<t̄}Δ}
};

struct ConstantFactorOptions {
  unsigned threads = 1;
  double perturbation = kDefaultPerturbation;
  std::size_t knapsack_item_cap = kDefaultKnapsackItemCap;
};

struct ConstantFactorRun {
  AlgoResult result;
  std::vector<AlgoResult> candidates;  // every feasible candidate, in scan order
  std::vector<DisjunctTrace> disjuncts;
};

// Best of the T replicated-knapsack solutions and the rounded two-stage
// solutions of every D(t̄, t̆, h) with 1 < t̄ < T.  Values are reported with
// the original item values; ties keep the earliest candidate in scan order
// (replicated by t̄, then disjuncts by (t̄, t̆, h)).
inline ConstantFactorRun solve_constant_factor_traced(const Instance& inst,
                                                      const ConstantFactorOptions& opts = {}) {
  const Instance work = perturb_values(inst, opts.perturbation);
  const int horizon = inst.horizon();
  const std::size_t n = inst.item_count();

  std::vector<DisjunctSpec> specs;
  for (Period tbar = 2; tbar < horizon; ++tbar) {
    for (Period tbreve = 1; tbreve <= tbar; ++tbreve) {
      for (std::size_t h = 0; h < n; ++h) specs.push_back({tbar, tbreve, h});
    }
  }

  std::vector<std::optional<AlgoResult>> replicated(horizon);
  std::vector<std::optional<DisjunctTrace>> traces(specs.size());
  parallel_for(static_cast<std::size_t>(horizon) + specs.size(), opts.threads, [&](std::size_t k) {
    if (k < static_cast<std::size_t>(horizon)) {
      replicated[k] = replicated_solution(work, static_cast<Period>(k + 1), opts.knapsack_item_cap);
      return;
    }
    const DisjunctSpec& spec = specs[k - static_cast<std::size_t>(horizon)];
    auto stage = solve_two_stage(work, spec);
    if (!stage) return;
    DisjunctTrace trace{spec, std::move(*stage), 0.0, 0.0};
    trace.rounded_value = evaluate(work, trace.stage.x_breve);
    const double before = work.discount_sum(1, spec.split_period - 1);
    const double after = work.discount_sum(spec.split_period, horizon);
    trace.round_down_factor = std::min(1.0, after / before) / 6.0;
    traces[k - static_cast<std::size_t>(horizon)] = std::move(trace);
  });

  ConstantFactorRun run;
  for (auto& r : replicated) {
    if (check_feasible(inst, r->schedule).feasible) run.candidates.push_back(*r);
  }
  for (auto& t : traces) {
    if (!t) continue;
    if (check_feasible(inst, t->stage.x_breve).feasible) {
      AlgoResult c;
      c.schedule = t->stage.x_breve;
      c.value = evaluate_with(inst, c.schedule, inst.original_values());
      c.algorithm = "disjunct";
      c.witness = {{"t_bar", std::to_string(t->spec.split_period)},
                   {"t_breve", std::to_string(t->spec.anchor_entry)},
                   {"h", inst.id(t->spec.anchor)}};
      run.candidates.push_back(std::move(c));
    }
    run.disjuncts.push_back(std::move(*t));
  }

  const AlgoResult* best = nullptr;
  for (const auto& c : run.candidates) {
    if (!best || detail::strictly_better(c.value, best->value)) best = &c;
  }
  if (best) {
    run.result = *best;
  } else {
    run.result.schedule = Schedule(n);
    run.result.value = 0.0;
  }
  std::vector<std::pair<std::string, std::string>> witness{{"candidate", run.result.algorithm}};
  witness.insert(witness.end(), run.result.witness.begin(), run.result.witness.end());
  run.result.witness = std::move(witness);
  run.result.algorithm = "constant";
  run.result.claimed_factor = guarantee_factor(inst);
  return run;
}

inline AlgoResult solve_constant_factor(const Instance& inst, const ConstantFactorOptions& opts = {}) {
  return solve_constant_factor_traced(inst, opts).result;
}

}  // namespace inkspan
