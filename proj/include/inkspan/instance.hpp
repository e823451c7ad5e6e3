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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inkspan/error.hpp"

namespace inkspan {

// Periods are 1-based throughout the public API: a schedule inserts an item
// at some period in [1, T], and capacity(t) / discount(t) take t in [1, T].
using Period = int;

// Unvalidated instance data as it comes off the wire.  Discounts may be left
// empty, meaning every period counts once.
struct InstanceData {
  std::vector<std::string> ids;
  std::vector<double> values;
  std::vector<double> weights;
  int horizon = 0;
  std::vector<double> capacities;
  std::vector<double> discounts;
};

// An incremental knapsack instance.  Immutable once built; construct through
// validate_instance().
class Instance {
 public:
  Instance() = default;

  std::size_t item_count() const { return values_.size(); }
  int horizon() const { return static_cast<int>(capacities_.size()); }

  const std::string& id(std::size_t i) const { return ids_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  double capacity(Period t) const { return capacities_[t - 1]; }
  double discount(Period t) const { return discounts_[t - 1]; }

  std::span<const std::string> ids() const { return ids_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> capacities() const { return capacities_; }
  std::span<const double> discounts() const { return discounts_; }

  // Values before any perturbation; identical to values() otherwise.
  std::span<const double> original_values() const { return original_values_; }

  bool time_invariant() const {
    return std::all_of(discounts_.begin(), discounts_.end(),
                       [](double d) { return d == 1.0; });
  }

  // Sum of discounts over the closed period range [first, last].
  double discount_sum(Period first, Period last) const {
    double s = 0.0;
    for (Period t = std::max(first, 1); t <= std::min(last, horizon()); ++t) {
      s += discounts_[t - 1];
    }
    return s;
  }

  double total_value() const { return sum(values_); }
  double total_weight() const { return sum(weights_); }

  InstanceData data() const {
    return {ids_, values_, weights_, horizon(), capacities_, discounts_};
  }

 private:
  friend Instance validate_instance(InstanceData raw);
  friend Instance perturb_values(const Instance& inst, double eta);

  static double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }

  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::vector<double> original_values_;
  std::vector<double> weights_;
  std::vector<double> capacities_;
  std::vector<double> discounts_;
};

inline Instance validate_instance(InstanceData raw) {
  const std::size_t n = raw.values.size();
  if (raw.weights.size() != n) {
    throw Error(ErrorCode::kLengthMismatch, "values and weights differ in length");
  }
  if (raw.ids.empty()) {
    for (std::size_t i = 0; i < n; ++i) raw.ids.push_back("i" + std::to_string(i + 1));
  } else if (raw.ids.size() != n) {
    throw Error(ErrorCode::kLengthMismatch, "ids and values differ in length");
  }
  if (raw.horizon <= 0) {
    throw Error(ErrorCode::kLengthMismatch, "horizon T must be positive");
  }
  const auto horizon = static_cast<std::size_t>(raw.horizon);
  if (raw.capacities.size() != horizon) {
    throw Error(ErrorCode::kLengthMismatch,
                "expected " + std::to_string(horizon) + " capacities, got " +
                    std::to_string(raw.capacities.size()));
  }
  if (raw.discounts.empty()) raw.discounts.assign(horizon, 1.0);
  if (raw.discounts.size() != horizon) {
    throw Error(ErrorCode::kLengthMismatch,
                "expected " + std::to_string(horizon) + " discounts, got " +
                    std::to_string(raw.discounts.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(raw.values[i] > 0.0) || !(raw.weights[i] > 0.0) ||
        !std::isfinite(raw.values[i]) || !std::isfinite(raw.weights[i])) {
      throw Error(ErrorCode::kNonPositiveDatum, "item " + raw.ids[i]);
    }
  }
  for (std::size_t t = 0; t < horizon; ++t) {
    if (!(raw.discounts[t] > 0.0) || !std::isfinite(raw.discounts[t])) {
      throw Error(ErrorCode::kNonPositiveDatum, "discount at period " + std::to_string(t + 1));
    }
    if (!(raw.capacities[t] >= 0.0) || !std::isfinite(raw.capacities[t])) {
      throw Error(ErrorCode::kNonPositiveDatum, "capacity at period " + std::to_string(t + 1));
    }
    if (t > 0 && raw.capacities[t] < raw.capacities[t - 1]) {
      throw Error(ErrorCode::kNonMonotoneCapacity,
                  "B_" + std::to_string(t + 1) + " < B_" + std::to_string(t));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (raw.ids[i] == raw.ids[j]) throw Error(ErrorCode::kBadInput, "duplicate id " + raw.ids[i]);
    }
  }

  Instance inst;
  inst.ids_ = std::move(raw.ids);
  inst.values_ = std::move(raw.values);
  inst.original_values_ = inst.values_;
  inst.weights_ = std::move(raw.weights);
  inst.capacities_ = std::move(raw.capacities);
  inst.discounts_ = std::move(raw.discounts);
  return inst;
}

// Per-item insertion period, or never.  The nested sets S_1 ⊆ ... ⊆ S_T are
// implied, so the precedence constraint cannot be violated.
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(std::size_t item_count) : times_(item_count) {}
  explicit Schedule(std::vector<std::optional<Period>> times) : times_(std::move(times)) {}

  std::size_t item_count() const { return times_.size(); }
  std::optional<Period> insertion_time(std::size_t i) const { return times_[i]; }
  void insert(std::size_t i, Period t) { times_[i] = t; }
  void remove(std::size_t i) { times_[i].reset(); }

  bool in_knapsack(std::size_t i, Period t) const {
    return times_[i].has_value() && *times_[i] <= t;
  }

  const std::vector<std::optional<Period>>& times() const { return times_; }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::vector<std::optional<Period>> times_;
};

namespace detail {

inline void check_schedule_shape(const Instance& inst, const Schedule& sched) {
  if (sched.item_count() != inst.item_count()) {
    throw Error(ErrorCode::kUnknownItem,
                "schedule covers " + std::to_string(sched.item_count()) + " items, instance has " +
                    std::to_string(inst.item_count()));
  }
  for (std::size_t i = 0; i < sched.item_count(); ++i) {
    auto t = sched.insertion_time(i);
    if (t && (*t < 1 || *t > inst.horizon())) {
      throw Error(ErrorCode::kUnknownItem,
                  "item " + inst.id(i) + " inserted at period " + std::to_string(*t) +
                      " outside [1, " + std::to_string(inst.horizon()) + "]");
    }
  }
}

}  // namespace detail

// Σ_t Δ_t · V(S_t), using the given per-item values.  Feasibility is not
// checked.
inline double evaluate_with(const Instance& inst, const Schedule& sched,
                            std::span<const double> values) {
  detail::check_schedule_shape(inst, sched);
  const int horizon = inst.horizon();
  double total = 0.0;
  for (std::size_t i = 0; i < sched.item_count(); ++i) {
    if (auto t = sched.insertion_time(i)) {
      total += values[i] * inst.discount_sum(*t, horizon);
    }
  }
  return total;
}

inline double evaluate(const Instance& inst, const Schedule& sched) {
  return evaluate_with(inst, sched, inst.values());
}

struct CapacityViolation {
  Period period;
  double load;
  double capacity;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<CapacityViolation> violations;
};

// Loads are compared against B_t with a relative slack of 1e-12 to absorb
// summation round-off on fractional data.
inline FeasibilityReport check_feasible(const Instance& inst, const Schedule& sched) {
  detail::check_schedule_shape(inst, sched);
  FeasibilityReport report;
  for (Period t = 1; t <= inst.horizon(); ++t) {
    double load = 0.0;
    for (std::size_t i = 0; i < sched.item_count(); ++i) {
      if (sched.in_knapsack(i, t)) load += inst.weight(i);
    }
    const double cap = inst.capacity(t);
    if (load > cap + 1e-12 * std::max(1.0, std::abs(cap))) {
      report.feasible = false;
      report.violations.push_back({t, load, cap});
    }
  }
  return report;
}

// Scales v_i by (1 + i·eta), i = 1..N, so that all value/weight ratios are
// pairwise distinct; eta is halved until they are.
inline Instance perturb_values(const Instance& inst, double eta) {
  if (!(eta > 0.0)) throw Error(ErrorCode::kBadInput, "perturbation eta must be positive");
  const std::size_t n = inst.item_count();
  Instance out = inst;
  for (int attempt = 0; attempt < 64; ++attempt, eta /= 2.0) {
    for (std::size_t i = 0; i < n; ++i) {
      out.values_[i] = inst.values_[i] * (1.0 + static_cast<double>(i + 1) * eta);
    }
    std::vector<double> ratios(n);
    for (std::size_t i = 0; i < n; ++i) ratios[i] = out.values_[i] / out.weights_[i];
    std::sort(ratios.begin(), ratios.end());
    if (std::adjacent_find(ratios.begin(), ratios.end()) == ratios.end()) {
      out.original_values_ = inst.original_values_;
      return out;
    }
  }
  throw Error(ErrorCode::kNumericalFailure, "could not separate value/weight ratios");
}

// A feasible schedule produced by one of the solvers.  `value` is always
// measured with the instance's original (unperturbed) values.
struct AlgoResult {
  Schedule schedule;
  double value = 0.0;
  std::string algorithm;
  std::vector<std::pair<std::string, std::string>> witness;
  std::optional<double> claimed_factor;
};

}  // namespace inkspan
