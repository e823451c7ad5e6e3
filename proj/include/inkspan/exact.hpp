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
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "inkspan/error.hpp"
#include "inkspan/instance.hpp"

namespace inkspan {

struct KnapsackSolution {
  std::vector<std::size_t> items;  // ascending indices
  double value = 0.0;
  double weight = 0.0;
};

inline constexpr std::size_t kDefaultKnapsackItemCap = 30;

namespace detail {

// Dantzig bound: greedy by value density, last item taken fractionally.
// `order` lists candidate items by non-increasing density.
inline double fractional_bound(std::span<const std::size_t> order, std::span<const double> values,
                               std::span<const double> weights, double capacity) {
  double bound = 0.0;
  for (std::size_t i : order) {
    if (capacity <= 0.0) break;
    if (weights[i] <= capacity) {
      capacity -= weights[i];
      bound += values[i];
    } else {
      bound += values[i] * (capacity / weights[i]);
      break;
    }
  }
  return bound;
}

inline std::vector<std::size_t> by_density(std::span<const double> values,
                                           std::span<const double> weights,
                                           std::size_t first = 0) {
  std::vector<std::size_t> order(values.size() - first);
  std::iota(order.begin(), order.end(), first);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] * weights[b] > values[b] * weights[a];
  });
  return order;
}

inline bool strictly_better(double candidate, double incumbent) {
  if (!std::isfinite(incumbent)) return candidate > incumbent;
  return candidate > incumbent + 1e-9 * std::max(1.0, std::abs(incumbent));
}

}  // namespace detail

// Exact 0/1 knapsack by depth-first branch and bound over items sorted by
// density, include-branch first, pruned with the fractional relaxation.
inline KnapsackSolution knapsack_exact(std::span<const double> values, std::span<const double> weights,
                                       double capacity,
                                       std::size_t item_cap = kDefaultKnapsackItemCap) {
  if (values.size() != weights.size()) {
    throw Error(ErrorCode::kLengthMismatch, "values and weights differ in length");
  }
  if (values.size() > item_cap) {
    throw Error(ErrorCode::kSizeLimit, "knapsack with " + std::to_string(values.size()) +
                                           " items exceeds cap " + std::to_string(item_cap));
  }
  const auto order = detail::by_density(values, weights);
  const std::size_t n = order.size();

  KnapsackSolution best;
  std::vector<bool> take(n, false);
  std::vector<bool> best_take(n, false);
  bool have_best = false;

  auto dfs = [&](auto&& self, std::size_t depth, double value, double room) -> void {
    if (depth == n) {
      if (!have_best || detail::strictly_better(value, best.value)) {
        best.value = value;
        best_take = take;
        have_best = true;
      }
      return;
    }
    if (have_best) {
      const double bound =
          value + detail::fractional_bound(std::span(order).subspan(depth), values, weights, room);
      if (!detail::strictly_better(bound, best.value)) return;
    }
    const std::size_t item = order[depth];
    if (weights[item] <= room) {
      take[depth] = true;
      self(self, depth + 1, value + values[item], room - weights[item]);
      take[depth] = false;
    }
    self(self, depth + 1, value, room);
  };
  dfs(dfs, 0, 0.0, capacity);

  for (std::size_t d = 0; d < n; ++d) {
    if (best_take[d]) {
      best.items.push_back(order[d]);
      best.weight += weights[order[d]];
    }
  }
  std::sort(best.items.begin(), best.items.end());
  return best;
}

inline constexpr double kDefaultLeafBudget = 1e7;

// Exhaustive search over insertion-time vectors in ({1..T} ∪ {never})^N.
// Items are decided in index order, periods tried earliest first with never
// last, so the first optimum found is the lexicographically earliest one.
inline AlgoResult brute_force(const Instance& inst, double leaf_budget = kDefaultLeafBudget) {
  const std::size_t n = inst.item_count();
  const int horizon = inst.horizon();
  const double leaves = std::pow(static_cast<double>(horizon) + 1.0, static_cast<double>(n));
  if (leaves > leaf_budget) {
    throw Error(ErrorCode::kSizeLimit, "brute force needs (T+1)^N = " + std::to_string(leaves) +
                                           " leaves, budget is " + std::to_string(leaf_budget));
  }
  const auto values = inst.values();
  const auto weights = inst.weights();

  // Suffix density orders for the bound on undecided items.
  std::vector<std::vector<std::size_t>> suffix_order(n + 1);
  for (std::size_t d = 0; d <= n; ++d) suffix_order[d] = detail::by_density(values, weights, d);
  std::vector<double> tail_discount(horizon + 2, 0.0);
  for (Period t = horizon; t >= 1; --t) tail_discount[t] = tail_discount[t + 1] + inst.discount(t);

  std::vector<double> load(horizon + 1, 0.0);
  Schedule current(n);
  Schedule best(n);
  double best_value = -std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;

  auto bound_from = [&](std::size_t depth) {
    double b = 0.0;
    for (Period t = 1; t <= horizon; ++t) {
      b += inst.discount(t) *
           detail::fractional_bound(suffix_order[depth], values, weights, inst.capacity(t) - load[t]);
    }
    return b;
  };

  auto dfs = [&](auto&& self, std::size_t depth, double value) -> void {
    ++nodes;
    if (depth == n) {
      if (detail::strictly_better(value, best_value)) {
        best_value = value;
        best = current;
      }
      return;
    }
    if (std::isfinite(best_value) && !detail::strictly_better(value + bound_from(depth), best_value)) {
      return;
    }
    const double w = weights[depth];
    for (Period start = 1; start <= horizon; ++start) {
      bool fits = true;
      for (Period t = start; t <= horizon; ++t) {
        if (load[t] + w > inst.capacity(t) + 1e-12 * std::max(1.0, inst.capacity(t))) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      for (Period t = start; t <= horizon; ++t) load[t] += w;
      current.insert(depth, start);
      self(self, depth + 1, value + values[depth] * tail_discount[start]);
      current.remove(depth);
      for (Period t = start; t <= horizon; ++t) load[t] -= w;
    }
    self(self, depth + 1, value);
  };
  dfs(dfs, 0, 0.0);

  AlgoResult result;
  result.schedule = best;
  result.value = evaluate_with(inst, best, inst.original_values());
  result.algorithm = "exact";
  result.claimed_factor = 1.0;
  result.witness.emplace_back("nodes", std::to_string(nodes));
  return result;
}

}  // namespace inkspan
