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

#include <cstddef>
#include <sstream>
#include <string>

#include "inkspan/exact.hpp"
#include "inkspan/instance.hpp"
#include "inkspan/lp.hpp"

namespace inkspan {

// Column of x_{i,t} in every time-indexed LP built here: item major, period
// minor, periods 1-based.
inline std::size_t time_indexed_column(std::size_t item, Period t, int horizon) {
  return item * static_cast<std::size_t>(horizon) + static_cast<std::size_t>(t - 1);
}

// Rows shared by every time-indexed formulation: capacity per period and
// x_{i,t-1} <= x_{i,t}.  Variables are created in [0, 1] with objective
// v_i Δ_t using the supplied values.
inline LinearProgram time_indexed_lp(const Instance& inst, std::span<const double> values) {
  const std::size_t n = inst.item_count();
  const int horizon = inst.horizon();
  LinearProgram lp;
  for (std::size_t i = 0; i < n; ++i) {
    for (Period t = 1; t <= horizon; ++t) lp.add_variable(values[i] * inst.discount(t), 0.0, 1.0);
  }
  const std::size_t cols = lp.variable_count();
  for (Period t = 1; t <= horizon; ++t) {
    std::vector<double> row(cols, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[time_indexed_column(i, t, horizon)] = inst.weight(i);
    lp.add_row(std::move(row), Relation::kLessEqual, inst.capacity(t));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (Period t = 2; t <= horizon; ++t) {
      std::vector<double> row(cols, 0.0);
      row[time_indexed_column(i, t - 1, horizon)] = 1.0;
      row[time_indexed_column(i, t, horizon)] = -1.0;
      lp.add_row(std::move(row), Relation::kLessEqual, 0.0);
    }
  }
  return lp;
}

// LP relaxation of the time-indexed IP.  The strengthened variant also fixes
// x_{i,t} = 0 whenever w_i > B_t.
inline LinearProgram build_relaxation(const Instance& inst, bool strengthened) {
  LinearProgram lp = time_indexed_lp(inst, inst.values());
  if (strengthened) {
    for (std::size_t i = 0; i < inst.item_count(); ++i) {
      for (Period t = 1; t <= inst.horizon(); ++t) {
        if (inst.weight(i) > inst.capacity(t)) lp.fix(time_indexed_column(i, t, inst.horizon()), 0.0);
      }
    }
  }
  return lp;
}

inline double relaxation_value(const Instance& inst, bool strengthened) {
  const LpOutcome out = solve_lp(build_relaxation(inst, strengthened));
  if (!out.optimal()) throw Error(ErrorCode::kNumericalFailure, "relaxation reported infeasible");
  return out.objective;
}

struct GapReport {
  double lp_value = 0.0;
  double ip_value = 0.0;
  double ratio = 1.0;
};

// Integrality gap of the strengthened relaxation against the exact optimum.
inline GapReport gap_report(const Instance& inst, double leaf_budget = kDefaultLeafBudget) {
  GapReport r;
  r.lp_value = relaxation_value(inst, true);
  r.ip_value = brute_force(inst, leaf_budget).value;
  r.ratio = r.ip_value > 0.0 ? r.lp_value / r.ip_value : 1.0;
  return r;
}

inline constexpr const char* kGapCsvHeader = "k,m,T,lp,ip,ratio";

inline std::string gap_csv_row(int k, int m, int horizon, const GapReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << k << ',' << m << ',' << horizon << ',' << r.lp_value << ',' << r.ip_value << ',' << r.ratio;
  return os.str();
}

}  // namespace inkspan
