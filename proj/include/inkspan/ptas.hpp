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
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inkspan/error.hpp"
#include "inkspan/exact.hpp"
#include "inkspan/instance.hpp"
#include "inkspan/lp.hpp"
#include "inkspan/parallel.hpp"
#include "inkspan/relaxation.hpp"

namespace inkspan {

inline constexpr double kDefaultLpBudget = 1e6;

// LP budget for the PTAS; INKSPAN_LP_BUDGET overrides the default.
inline double default_lp_budget() {
  const char* env = std::getenv("INKSPAN_LP_BUDGET");
  if (!env || !*env) return kDefaultLpBudget;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (*end != '\0' || !(v > 0)) throw Error(ErrorCode::kBadInput, std::string("bad INKSPAN_LP_BUDGET: ") + env);
  return v;
}

// Value classes around a guessed most valuable item h.  Items worth more than
// h are excluded (modified value 0, never packed).
struct ValueClassing {
  std::size_t h = 0;
  double epsilon = 0.5;
  int K = 0;
  int J = 0;
  std::vector<std::vector<std::size_t>> classes;  // S^{k,h}, lightest first
  std::vector<std::size_t> tail;                  // T^h
  std::vector<double> class_values;               // (1-ε)^{k-1}·v_h
  std::vector<double> modified_values;            // v′ per item
  std::vector<bool> excluded;

  std::vector<int> class_maxima() const {
    std::vector<int> m;
    for (const auto& c : classes) m.push_back(std::min(J, static_cast<int>(c.size())));
    return m;
  }
};

// Smallest K with (1-ε)^K < ε/T.
inline int class_count(double epsilon, int horizon) {
  int k = 1;
  for (double p = 1.0 - epsilon; p >= epsilon / horizon; p *= 1.0 - epsilon) ++k;
  return k;
}

inline int enumeration_cap(double epsilon) { return static_cast<int>(std::ceil(1.0 / epsilon - 1e-12)); }

namespace detail {

inline void check_ptas_input(const Instance& inst, double epsilon) {
  if (!inst.time_invariant()) throw Error(ErrorCode::kNotTimeInvariant, "PTAS needs every discount equal to 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::kBadInput, "epsilon must lie in (0, 1)");
}

}  // namespace detail

inline ValueClassing build_classes(const Instance& inst, std::size_t h, double epsilon) {
  detail::check_ptas_input(inst, epsilon);
  if (h >= inst.item_count()) throw Error(ErrorCode::kUnknownItem, "anchor index out of range");
  ValueClassing c;
  c.h = h;
  c.epsilon = epsilon;
  c.K = class_count(epsilon, inst.horizon());
  c.J = enumeration_cap(epsilon);
  c.classes.assign(c.K, {});
  const double vh = inst.value(h);
  std::vector<double> power(c.K + 1, 1.0);
  for (int k = 1; k <= c.K; ++k) power[k] = power[k - 1] * (1.0 - epsilon);
  for (int k = 1; k <= c.K; ++k) c.class_values.push_back(power[k - 1] * vh);

  const std::size_t n = inst.item_count();
  c.modified_values.assign(n, 0.0);
  c.excluded.assign(n, false);
  c.modified_values[h] = vh;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == h) continue;
    const double v = inst.value(j);
    if (v > vh) {
      c.excluded[j] = true;
    } else if (v <= power[c.K] * vh) {
      c.tail.push_back(j);
      c.modified_values[j] = v;
    } else {
      int k = 1;
      while (v <= power[k] * vh) ++k;
      c.classes[k - 1].push_back(j);
      c.modified_values[j] = c.class_values[k - 1];
    }
  }
  for (auto& cls : c.classes) {
    std::stable_sort(cls.begin(), cls.end(), [&](std::size_t a, std::size_t b) { return inst.weight(a) < inst.weight(b); });
  }
  return c;
}

// σ^k_t: how many of class k's items are in at period t (1-based t is
// index t-1).  Entries are capped at min(J, |S^{k,h}|).
struct SigmaVector {
  std::vector<std::vector<int>> per_class;
  bool operator==(const SigmaVector&) const = default;
};

inline std::string to_string(const SigmaVector& s) {
  std::string out;
  for (std::size_t k = 0; k < s.per_class.size(); ++k) {
    if (k) out += ';';
    out += '(';
    for (std::size_t t = 0; t < s.per_class[k].size(); ++t) {
      if (t) out += ',';
      out += std::to_string(s.per_class[k][t]);
    }
    out += ')';
  }
  return out;
}

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// C(T + m, T): nondecreasing T-tuples over {0..m}.
inline std::uint64_t monotone_tuples(int horizon, int m) {
  std::uint64_t r = 1;
  for (int i = 1; i <= m; ++i) r = saturating_mul(r, static_cast<std::uint64_t>(horizon + i)) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace detail

inline std::uint64_t count_sigmas(int horizon, std::span<const int> maxima) {
  std::uint64_t r = 1;
  for (int m : maxima) r = detail::saturating_mul(r, detail::monotone_tuples(horizon, m));
  return r;
}

// Number of Q^{σ,h} LPs for N anchors sharing one class-size profile.
inline std::uint64_t count_lps(std::size_t items, int horizon, int J, std::span<const std::size_t> class_sizes) {
  std::vector<int> maxima;
  for (std::size_t s : class_sizes) maxima.push_back(std::min<int>(J, static_cast<int>(s)));
  return detail::saturating_mul(items, count_sigmas(horizon, maxima));
}

// Closed-form bound N·(J(J+T)^J)^K, independent of the instance.
inline double count_lps_bound(std::size_t items, int horizon, double epsilon) {
  const int K = class_count(epsilon, horizon);
  const int J = enumeration_cap(epsilon);
  return static_cast<double>(items) * std::pow(J * std::pow(J + horizon, J), K);
}

// Exact LP count for an instance: the σ-space size summed over anchors.
inline std::uint64_t count_lps(const Instance& inst, double epsilon) {
  std::uint64_t total = 0;
  for (std::size_t h = 0; h < inst.item_count(); ++h) {
    const std::uint64_t c = count_sigmas(inst.horizon(), build_classes(inst, h, epsilon).class_maxima());
    total = c > std::numeric_limits<std::uint64_t>::max() - total ? std::numeric_limits<std::uint64_t>::max() : total + c;
  }
  return total;
}

// Visits every σ in lexicographic order (class 1 most significant, then
// period 1).  Stops early when fn returns false.
inline void for_each_sigma(int horizon, std::span<const int> maxima, const std::function<bool(const SigmaVector&)>& fn) {
  SigmaVector s;
  s.per_class.assign(maxima.size(), std::vector<int>(horizon, 0));
  for (;;) {
    if (!fn(s)) return;
    std::size_t k = maxima.size();
    for (; k-- > 0;) {
      auto& tuple = s.per_class[k];
      int p = horizon - 1;
      while (p >= 0 && tuple[p] == maxima[k]) --p;
      if (p >= 0) {
        const int v = tuple[p] + 1;
        std::fill(tuple.begin() + p, tuple.end(), v);
        break;
      }
      std::fill(tuple.begin(), tuple.end(), 0);
    }
    if (k == static_cast<std::size_t>(-1)) return;
  }
}

inline std::vector<SigmaVector> enumerate_sigmas(int horizon, std::span<const int> maxima,
                                                 double budget = kDefaultLpBudget) {
  const std::uint64_t n = count_sigmas(horizon, maxima);
  if (static_cast<double>(n) > budget) {
    throw Error(ErrorCode::kBudgetExceeded,
                std::to_string(n) + " sigma vectors exceed the LP budget " + std::to_string(static_cast<std::uint64_t>(budget)));
  }
  std::vector<SigmaVector> out;
  out.reserve(n);
  for_each_sigma(horizon, maxima, [&](const SigmaVector& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

inline std::vector<SigmaVector> enumerate_sigmas(const ValueClassing& c, int horizon, double budget = kDefaultLpBudget) {
  return enumerate_sigmas(horizon, c.class_maxima(), budget);
}

// Q^{σ,h} over the full item × period grid; items above v_h are fixed to 0.
// The anchor keeps its precedence rows and is pinned in at T.
inline LinearProgram build_Q_lp(const Instance& inst, const ValueClassing& c, const SigmaVector& sigma) {
  const int horizon = inst.horizon();
  if (sigma.per_class.size() != c.classes.size()) throw Error(ErrorCode::kBadInput, "sigma has the wrong class count");
  LinearProgram lp = time_indexed_lp(inst, c.modified_values);
  auto col = [&](std::size_t i, Period t) { return time_indexed_column(i, t, horizon); };
  for (std::size_t i = 0; i < inst.item_count(); ++i) {
    if (!c.excluded[i]) continue;
    for (Period t = 1; t <= horizon; ++t) lp.fix(col(i, t), 0.0);
  }
  lp.fix(col(c.h, horizon), 1.0);
  for (std::size_t k = 0; k < c.classes.size(); ++k) {
    const auto& cls = c.classes[k];
    const int size = static_cast<int>(cls.size());
    if (static_cast<int>(sigma.per_class[k].size()) != horizon) throw Error(ErrorCode::kBadInput, "sigma tuple length != T");
    for (Period t = 1; t <= horizon; ++t) {
      const int s = sigma.per_class[k][t - 1];
      if (s < 0 || s > std::min(c.J, size)) throw Error(ErrorCode::kBadInput, "sigma entry out of range");
      if (s >= size) {
        for (std::size_t i : cls) lp.fix(col(i, t), 1.0);
      } else if (s < c.J) {
        for (int r = 0; r < size; ++r) lp.fix(col(cls[r], t), r < s ? 1.0 : 0.0);
      } else {
        std::vector<double> row(lp.variable_count(), 0.0);
        for (int r = 0; r < size; ++r) {
          if (r < s) lp.fix(col(cls[r], t), 1.0);
          row[col(cls[r], t)] = 1.0;
        }
        lp.add_row(std::move(row), Relation::kGreaterEqual, s);
      }
    }
  }
  return lp;
}

namespace detail {

inline bool fits(double load, double budget) { return load <= budget + 1e-12 * std::max(1.0, std::abs(budget)); }

}  // namespace detail

// Per-period count of class-k items to keep (a lightest-first prefix).  In
// periods with σ^k_t = J < |S^{k,h}| the prefix grows greedily inside the
// class's weight budget Σ w x̄; elsewhere the pins already decide it.
inline std::vector<int> round_class(const std::vector<double>& xbar, const Instance& inst, const ValueClassing& c,
                                    std::size_t k, std::span<const int> sigma_k) {
  const int horizon = inst.horizon();
  const auto& cls = c.classes[k];
  const int size = static_cast<int>(cls.size());
  std::vector<int> counts(horizon, 0);
  for (Period t = 1; t <= horizon; ++t) {
    const int s = sigma_k[t - 1];
    int count = std::min(s, size);
    if (s == c.J && s < size) {
      double budget = 0.0;
      double used = 0.0;
      for (std::size_t i : cls) budget += inst.weight(i) * xbar[time_indexed_column(i, t, horizon)];
      for (int r = 0; r < count; ++r) used += inst.weight(cls[r]);
      while (count < size && detail::fits(used + inst.weight(cls[count]), budget)) used += inst.weight(cls[count++]);
    }
    counts[t - 1] = t > 1 ? std::max(count, counts[t - 2]) : count;
  }
  return counts;
}

// Tail order for the ratio greedy: nonincreasing v/w, ties by index.
inline std::vector<std::size_t> tail_order(const Instance& inst, const ValueClassing& c) {
  std::vector<std::size_t> order = c.tail;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.value(a) / inst.weight(a) > inst.value(b) / inst.weight(b);
  });
  return order;
}

// Per-period prefix length of tail_order() packed by the ratio greedy inside
// the tail's weight budget; the first item that does not fit ends the prefix.
inline std::vector<int> round_tail(const std::vector<double>& xbar, const Instance& inst, const ValueClassing& c) {
  const int horizon = inst.horizon();
  const std::vector<std::size_t> order = tail_order(inst, c);
  std::vector<int> counts(horizon, 0);
  for (Period t = 1; t <= horizon; ++t) {
    double budget = 0.0;
    for (std::size_t i : order) budget += inst.weight(i) * xbar[time_indexed_column(i, t, horizon)];
    int count = 0;
    double used = 0.0;
    while (count < static_cast<int>(order.size()) && detail::fits(used + inst.weight(order[count]), budget)) {
      used += inst.weight(order[count++]);
    }
    counts[t - 1] = t > 1 ? std::max(count, counts[t - 2]) : count;
  }
  return counts;
}

// One solved Q^{σ,h} and how its rounding compares with x̄, block by block,
// in modified values.
struct QTrace {
  std::size_t h = 0;
  SigmaVector sigma;
  double lp_value = 0.0;
  double assembled_modified = 0.0;
  double value = 0.0;  // assembled schedule, original values
  std::vector<double> class_lp, class_assembled;
  double tail_lp = 0.0, tail_assembled = 0.0;
  double anchor_lp = 0.0, anchor_assembled = 0.0;
  bool feasible = false;
};

struct PtasOptions {
  unsigned threads = 1;
  double lp_budget = default_lp_budget();
  bool keep_traces = false;
};

struct PtasRun {
  AlgoResult result;
  std::vector<QTrace> traces;
  std::uint64_t lps_solved = 0;
  std::uint64_t pruned = 0;
};

namespace detail {

// Pinned load per period; a σ whose pins overload some B_t has an empty Q.
inline bool pins_fit(const Instance& inst, const ValueClassing& c, const SigmaVector& sigma) {
  const int horizon = inst.horizon();
  for (Period t = 1; t <= horizon; ++t) {
    double load = t == horizon ? inst.weight(c.h) : 0.0;
    for (std::size_t k = 0; k < c.classes.size(); ++k) {
      const int n = std::min<int>(sigma.per_class[k][t - 1], static_cast<int>(c.classes[k].size()));
      for (int r = 0; r < n; ++r) load += inst.weight(c.classes[k][r]);
    }
    if (!fits(load, inst.capacity(t))) return false;
  }
  return true;
}

// Integral point x^{σ,h}: class prefixes, tail prefixes, anchor row floored.
inline QTrace assemble(const Instance& inst, const ValueClassing& c, const SigmaVector& sigma, const LpOutcome& out,
                       Schedule* sched) {
  const int horizon = inst.horizon();
  auto xb = [&](std::size_t i, Period t) { return out.x[time_indexed_column(i, t, horizon)]; };
  QTrace q;
  q.h = c.h;
  q.sigma = sigma;
  q.lp_value = out.objective;
  *sched = Schedule(inst.item_count());

  for (Period t = 1; t <= horizon; ++t) q.anchor_lp += c.modified_values[c.h] * xb(c.h, t);
  for (Period t = 1; t <= horizon; ++t) {
    if (xb(c.h, t) >= 1.0 - 1e-12) {
      sched->insert(c.h, t);
      q.anchor_assembled = c.modified_values[c.h] * (horizon - t + 1);
      break;
    }
  }

  for (std::size_t k = 0; k < c.classes.size(); ++k) {
    const auto& cls = c.classes[k];
    double lp = 0.0;
    for (std::size_t i : cls) {
      for (Period t = 1; t <= horizon; ++t) lp += c.class_values[k] * xb(i, t);
    }
    const std::vector<int> counts = round_class(out.x, inst, c, k, sigma.per_class[k]);
    double got = 0.0;
    for (Period t = horizon; t >= 1; --t) {
      for (int r = 0; r < counts[t - 1]; ++r) sched->insert(cls[r], t);
      got += c.class_values[k] * counts[t - 1];
    }
    q.class_lp.push_back(lp);
    q.class_assembled.push_back(got);
  }

  const std::vector<std::size_t> order = tail_order(inst, c);
  for (std::size_t i : order) {
    for (Period t = 1; t <= horizon; ++t) q.tail_lp += inst.value(i) * xb(i, t);
  }
  const std::vector<int> tail_counts = round_tail(out.x, inst, c);
  for (Period t = horizon; t >= 1; --t) {
    for (int r = 0; r < tail_counts[t - 1]; ++r) {
      sched->insert(order[r], t);
      q.tail_assembled += inst.value(order[r]);
    }
  }

  q.assembled_modified = q.anchor_assembled + q.tail_assembled;
  for (double v : q.class_assembled) q.assembled_modified += v;
  q.feasible = check_feasible(inst, *sched).feasible;
  q.value = evaluate(inst, *sched);
  return q;
}

}  // namespace detail

// Disjunctive PTAS for time-invariant instances.  Every anchor h and every σ
// gives one Q^{σ,h}; each nonempty one is solved and rounded to an integral
// schedule.  The best schedule by original value wins, earliest (h, σ) on
// ties.  Throws BudgetExceeded before solving anything when the exact LP
// count is over opts.lp_budget.
inline PtasRun solve_ptas_traced(const Instance& inst, double epsilon, const PtasOptions& opts = {}) {
  detail::check_ptas_input(inst, epsilon);
  const std::size_t n = inst.item_count();
  const int horizon = inst.horizon();
  const std::uint64_t lps = count_lps(inst, epsilon);
  if (static_cast<double>(lps) > opts.lp_budget) {
    throw Error(ErrorCode::kBudgetExceeded, std::to_string(lps) + " LPs exceed the LP budget " +
                                                std::to_string(static_cast<std::uint64_t>(opts.lp_budget)));
  }

  struct PerAnchor {
    std::optional<AlgoResult> best;
    std::vector<QTrace> traces;
    std::uint64_t solved = 0, pruned = 0;
  };
  std::vector<PerAnchor> per(n);
  parallel_for(n, opts.threads, [&](std::size_t h) {
    PerAnchor& slot = per[h];
    const ValueClassing c = build_classes(inst, h, epsilon);
    const std::vector<int> maxima = c.class_maxima();
    for_each_sigma(horizon, maxima, [&](const SigmaVector& sigma) {
      if (!detail::pins_fit(inst, c, sigma)) {
        ++slot.pruned;
        return true;
      }
      const LpOutcome out = solve_lp(build_Q_lp(inst, c, sigma));
      ++slot.solved;
      if (!out.optimal()) return true;
      Schedule sched;
      QTrace q = detail::assemble(inst, c, sigma, out, &sched);
      if (q.feasible && (!slot.best || detail::strictly_better(q.value, slot.best->value))) {
        AlgoResult r;
        r.schedule = sched;
        r.value = q.value;
        r.witness = {{"h", inst.id(h)}, {"sigma", to_string(sigma)}};
        slot.best = std::move(r);
      }
      if (opts.keep_traces) slot.traces.push_back(std::move(q));
      return true;
    });
  });

  PtasRun run;
  const AlgoResult* best = nullptr;
  for (auto& p : per) {
    run.lps_solved += p.solved;
    run.pruned += p.pruned;
    if (p.best && (!best || detail::strictly_better(p.best->value, best->value))) best = &*p.best;
    for (auto& q : p.traces) run.traces.push_back(std::move(q));
  }
  if (best) {
    run.result = *best;
  } else {
    run.result.schedule = Schedule(n);
    run.result.value = 0.0;
  }
  run.result.algorithm = "ptas";
  run.result.witness.emplace_back("lps", std::to_string(run.lps_solved));
  run.result.claimed_factor = (1.0 - epsilon) * (1.0 - epsilon);
  return run;
}

inline AlgoResult solve_ptas(const Instance& inst, double epsilon, const PtasOptions& opts = {}) {
  return solve_ptas_traced(inst, epsilon, opts).result;
}

}  // namespace inkspan
