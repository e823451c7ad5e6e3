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

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inkspan/error.hpp"

namespace inkspan {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

// A maximization LP over boxed variables:
//   max c·x  s.t.  a_r·x (≤|≥|=) b_r,  lo ≤ x ≤ hi.
// Every variable carries finite bounds, so the LP is never unbounded.
struct LinearProgram {
  struct Row {
    std::vector<double> coeffs;
    Relation relation = Relation::kLessEqual;
    double rhs = 0.0;
  };

  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;

  std::size_t variable_count() const { return objective.size(); }

  std::size_t add_variable(double cost, double lo, double hi) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    for (auto& row : rows) row.coeffs.push_back(0.0);
    return objective.size() - 1;
  }

  // Adds a dense row; short coefficient vectors are zero-padded.
  void add_row(std::vector<double> coeffs, Relation relation, double rhs) {
    coeffs.resize(variable_count(), 0.0);
    rows.push_back({std::move(coeffs), relation, rhs});
  }

  void fix(std::size_t j, double value) {
    lower[j] = value;
    upper[j] = value;
  }
};

enum class LpStatus { kOptimal, kInfeasible };

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  bool used_exact_arithmetic = false;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

struct LpResidual {
  double max_row_violation = 0.0;
  double max_bound_violation = 0.0;
  double max_violation() const { return std::max(max_row_violation, max_bound_violation); }
  bool within(double tol) const { return max_violation() <= tol; }
};

// Absolute feasibility and optimality tolerance of the floating-point path.
inline constexpr double kLpTolerance = 1e-9;

inline LpResidual check_solution(const LinearProgram& lp, std::span<const double> x) {
  if (x.size() != lp.variable_count()) {
    throw Error(ErrorCode::kLengthMismatch, "point dimension does not match LP");
  }
  LpResidual res;
  for (std::size_t j = 0; j < x.size(); ++j) {
    res.max_bound_violation = std::max({res.max_bound_violation, lp.lower[j] - x[j], x[j] - lp.upper[j]});
  }
  for (const auto& row : lp.rows) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += row.coeffs[j] * x[j];
    double v = 0.0;
    switch (row.relation) {
      case Relation::kLessEqual: v = lhs - row.rhs; break;
      case Relation::kGreaterEqual: v = row.rhs - lhs; break;
      case Relation::kEqual: v = std::abs(lhs - row.rhs); break;
    }
    res.max_row_violation = std::max(res.max_row_violation, v);
  }
  return res;
}

namespace detail {

template <class Scalar>
struct SimplexTraits;

template <>
struct SimplexTraits<double> {
  static constexpr double kPivot = 1e-11;
  static constexpr double kReducedCost = kLpTolerance;
  static constexpr double kFeasibility = kLpTolerance;
  static double from(double v) { return v; }
  static double to_double(double v) { return v; }
  static bool positive(double v, double tol) { return v > tol; }
};

template <>
struct SimplexTraits<mpq_class> {
  static constexpr double kPivot = 0.0;
  static constexpr double kReducedCost = 0.0;
  static constexpr double kFeasibility = 0.0;
  static mpq_class from(double v) { return mpq_class(v); }
  static double to_double(const mpq_class& v) { return v.get_d(); }
  static bool positive(const mpq_class& v, double) { return sgn(v) > 0; }
};

struct NumericalBreakdown {};

// Two-phase primal simplex on a dense tableau with Bland's rule.  Fixed
// variables are substituted out; the remaining ones are shifted to [0, u]
// and their upper bounds become explicit rows.
template <class Scalar>
class DenseSimplex {
  using Traits = SimplexTraits<Scalar>;

 public:
  explicit DenseSimplex(const LinearProgram& lp) : lp_(lp) {}

  LpOutcome solve() {
    const std::size_t n = lp_.variable_count();
    for (std::size_t j = 0; j < n; ++j) {
      if (lp_.lower[j] > lp_.upper[j]) return {};
      if (lp_.lower[j] < lp_.upper[j]) free_.push_back(j);
    }

    std::vector<std::vector<Scalar>> a;
    std::vector<Relation> rel;
    std::vector<Scalar> b;
    for (const auto& row : lp_.rows) {
      std::vector<Scalar> coeffs(free_.size());
      Scalar rhs = Traits::from(row.rhs);
      bool empty = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (row.coeffs[j] != 0.0) rhs -= Traits::from(row.coeffs[j]) * Traits::from(lp_.lower[j]);
      }
      for (std::size_t k = 0; k < free_.size(); ++k) {
        coeffs[k] = Traits::from(row.coeffs[free_[k]]);
        if (coeffs[k] != 0) empty = false;
      }
      if (empty) {
        const double tol = Traits::kFeasibility;
        const bool ok = (row.relation == Relation::kLessEqual && !Traits::positive(-rhs, tol)) ||
                        (row.relation == Relation::kGreaterEqual && !Traits::positive(rhs, tol)) ||
                        (row.relation == Relation::kEqual && !Traits::positive(rhs, tol) &&
                         !Traits::positive(-rhs, tol));
        if (!ok) return {};
        continue;
      }
      a.push_back(std::move(coeffs));
      rel.push_back(row.relation);
      b.push_back(rhs);
    }
    for (std::size_t k = 0; k < free_.size(); ++k) {
      std::vector<Scalar> coeffs(free_.size());
      coeffs[k] = 1;
      a.push_back(std::move(coeffs));
      rel.push_back(Relation::kLessEqual);
      b.push_back(Traits::from(lp_.upper[free_[k]]) - Traits::from(lp_.lower[free_[k]]));
    }

    build_tableau(a, rel, b);
    if (!phase_one()) return {};
    phase_two();
    return extract();
  }

 private:
  Scalar& at(std::size_t r, std::size_t c) { return tab_[r * width_ + c]; }
  std::size_t rhs_col() const { return cols_; }

  void build_tableau(const std::vector<std::vector<Scalar>>& a, const std::vector<Relation>& rel,
                     const std::vector<Scalar>& b) {
    rows_ = a.size();
    const std::size_t nf = free_.size();
    std::size_t slack_count = 0;
    for (auto r : rel) slack_count += (r != Relation::kEqual);

    // Column layout: structural | slacks | artificials.
    std::vector<int> row_slack(rows_, -1);
    std::vector<int> slack_sign(rows_, 0);
    std::size_t next = nf;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (rel[r] == Relation::kEqual) continue;
      row_slack[r] = static_cast<int>(next++);
      slack_sign[r] = rel[r] == Relation::kLessEqual ? 1 : -1;
    }
    std::vector<bool> negate(rows_);
    std::vector<bool> needs_art(rows_);
    std::size_t art_count = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      negate[r] = Traits::positive(-b[r], 0.0);
      const int eff_sign = negate[r] ? -slack_sign[r] : slack_sign[r];
      needs_art[r] = eff_sign != 1;
      art_count += needs_art[r];
    }
    first_art_ = nf + slack_count;
    cols_ = first_art_ + art_count;
    width_ = cols_ + 1;
    tab_.assign((rows_ + 1) * width_, Scalar(0));
    basis_.assign(rows_, 0);

    std::size_t art = first_art_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar sign = negate[r] ? Scalar(-1) : Scalar(1);
      for (std::size_t k = 0; k < nf; ++k) at(r, k) = sign * a[r][k];
      if (row_slack[r] >= 0) at(r, row_slack[r]) = sign * Scalar(slack_sign[r]);
      at(r, rhs_col()) = sign * b[r];
      if (needs_art[r]) {
        at(r, art) = 1;
        basis_[r] = art++;
      } else {
        basis_[r] = static_cast<std::size_t>(row_slack[r]);
      }
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    const Scalar inv = Scalar(1) / at(pr, pc);
    for (std::size_t c = 0; c < width_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const Scalar f = at(r, pc);
      if (f == 0) continue;
      for (std::size_t c = 0; c < width_; ++c) {
        if (at(pr, c) != 0) at(r, c) -= f * at(pr, c);
      }
      at(r, pc) = 0;
    }
    basis_[pr] = pc;
  }

  // Objective row holds reduced costs d_j = c_j - c_B B^-1 A_j in columns and
  // -(c_B B^-1 b) in the rhs column.
  void load_objective(const std::vector<Scalar>& cost) {
    for (std::size_t c = 0; c < width_; ++c) at(rows_, c) = c < cols_ ? cost[c] : Scalar(0);
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t c = 0; c < width_; ++c) at(rows_, c) -= cb * at(r, c);
    }
  }

  void iterate(std::size_t eligible_cols) {
    const std::size_t limit = 50000 + 50 * (rows_ + cols_);
    for (std::size_t iter = 0;; ++iter) {
      if (iter > limit) throw NumericalBreakdown{};
      std::size_t enter = eligible_cols;
      for (std::size_t c = 0; c < eligible_cols; ++c) {
        if (Traits::positive(at(rows_, c), Traits::kReducedCost)) {
          enter = c;
          break;
        }
      }
      if (enter == eligible_cols) return;
      std::optional<std::size_t> leave;
      Scalar best_ratio = 0;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!Traits::positive(at(r, enter), Traits::kPivot)) continue;
        Scalar ratio = at(r, rhs_col()) / at(r, enter);
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      // Boxed variables keep every column bounded.
      if (!leave) throw NumericalBreakdown{};
      pivot(*leave, enter);
    }
  }

  bool phase_one() {
    if (first_art_ == cols_) return true;
    std::vector<Scalar> cost(cols_, Scalar(0));
    for (std::size_t c = first_art_; c < cols_; ++c) cost[c] = -1;
    load_objective(cost);
    iterate(cols_);
    // rhs of the objective row is -(phase-one value) = sum of artificials.
    if (Traits::positive(at(rows_, rhs_col()), Traits::kFeasibility)) return false;

    for (std::size_t r = 0; r < rows_;) {
      if (basis_[r] < first_art_) {
        ++r;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t c = 0; c < first_art_; ++c) {
        const Scalar v = at(r, c);
        if (Traits::positive(v, Traits::kPivot) || Traits::positive(-v, Traits::kPivot)) {
          col = c;
          break;
        }
      }
      if (col) {
        pivot(r, *col);
        ++r;
      } else {
        drop_row(r);
      }
    }
    return true;
  }

  void drop_row(std::size_t r) {
    tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(r * width_),
               tab_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width_));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  void phase_two() {
    std::vector<Scalar> cost(cols_, Scalar(0));
    for (std::size_t k = 0; k < free_.size(); ++k) cost[k] = Traits::from(lp_.objective[free_[k]]);
    load_objective(cost);
    iterate(first_art_);
  }

  LpOutcome extract() {
    const std::size_t n = lp_.variable_count();
    std::vector<Scalar> y(free_.size(), Scalar(0));
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < free_.size()) y[basis_[r]] = at(r, rhs_col());
    }
    LpOutcome out;
    out.status = LpStatus::kOptimal;
    out.x.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) out.x[j] = lp_.lower[j];
    for (std::size_t k = 0; k < free_.size(); ++k) {
      const std::size_t j = free_[k];
      double v = Traits::to_double(Traits::from(lp_.lower[j]) + y[k]);
      // Snap round-off onto the bounds so integrality tests see exact 0/1.
      if (std::abs(v - lp_.lower[j]) <= 1e-12) v = lp_.lower[j];
      if (std::abs(v - lp_.upper[j]) <= 1e-12) v = lp_.upper[j];
      out.x[j] = v;
    }
    Scalar obj = 0;
    std::vector<const Scalar*> shift(n, nullptr);
    for (std::size_t k = 0; k < free_.size(); ++k) shift[free_[k]] = &y[k];
    for (std::size_t j = 0; j < n; ++j) {
      if (lp_.objective[j] == 0.0) continue;
      Scalar xj = Traits::from(lp_.lower[j]);
      if (shift[j]) xj += *shift[j];
      obj += Traits::from(lp_.objective[j]) * xj;
    }
    out.objective = Traits::to_double(obj);
    out.used_exact_arithmetic = std::is_same_v<Scalar, mpq_class>;
    return out;
  }

  const LinearProgram& lp_;
  std::vector<std::size_t> free_;
  std::vector<Scalar> tab_;
  std::vector<std::size_t> basis_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t width_ = 0;
  std::size_t first_art_ = 0;
};

inline void check_shape(const LinearProgram& lp) {
  const std::size_t n = lp.variable_count();
  if (lp.lower.size() != n || lp.upper.size() != n) {
    throw Error(ErrorCode::kLengthMismatch, "bound vectors do not match variable count");
  }
  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != n) throw Error(ErrorCode::kLengthMismatch, "LP row has wrong length");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lp.lower[j]) || !std::isfinite(lp.upper[j])) {
      throw Error(ErrorCode::kBadInput, "LP variable bounds must be finite");
    }
  }
}

}  // namespace detail

// Solves in exact rational arithmetic.  Slow; used as the fallback path.
inline LpOutcome solve_lp_exact(const LinearProgram& lp) {
  detail::check_shape(lp);
  return detail::DenseSimplex<mpq_class>(lp).solve();
}

// Floating-point simplex with a residual check on the returned vertex.  If the
// float path breaks down (iteration cap, lost pivot, residual above
// kLpTolerance) the LP is re-solved exactly; with `exact_fallback` off the
// breakdown is reported as NumericalFailure instead.
inline LpOutcome solve_lp(const LinearProgram& lp, bool exact_fallback = true) {
  detail::check_shape(lp);
  try {
    LpOutcome out = detail::DenseSimplex<double>(lp).solve();
    if (!out.optimal() || check_solution(lp, out.x).within(kLpTolerance)) return out;
  } catch (const detail::NumericalBreakdown&) {
  }
  if (!exact_fallback) throw Error(ErrorCode::kNumericalFailure, "floating-point simplex broke down");
  return solve_lp_exact(lp);
}

}  // namespace inkspan
