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

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "inkspan/error.hpp"
#include "inkspan/instance.hpp"

namespace inkspan {

inline constexpr long long kMaxGapHorizon = 1'000'000;

// Member (k, m) of the integrality-gap family: T = k^m periods, items
// i = 1..m with v_i = w_i = k^i, B_t = k^i on the periods
// [T(1 - k^{1-i}) + 1, T(1 - k^{-i})], and B_T = B_{T-1}.
inline Instance gen_gap_family(int k, int m) {
  if (k < 2 || m < 1) throw Error(ErrorCode::kBadInput, "gap family needs k >= 2 and m >= 1");
  long long horizon = 1;
  for (int i = 0; i < m; ++i) {
    horizon *= k;
    if (horizon > kMaxGapHorizon) {
      throw Error(ErrorCode::kOverflow, "k^m exceeds " + std::to_string(kMaxGapHorizon));
    }
  }
  InstanceData d;
  d.horizon = static_cast<int>(horizon);
  d.capacities.assign(static_cast<std::size_t>(horizon), 0.0);
  long long power = 1;   // k^{i-1}
  for (int i = 1; i <= m; ++i) {
    const long long first = horizon - horizon / power + 1;
    power *= k;
    const long long last = horizon - horizon / power;
    d.ids.push_back("i" + std::to_string(i));
    d.values.push_back(static_cast<double>(power));
    d.weights.push_back(static_cast<double>(power));
    for (long long t = first; t <= last; ++t) d.capacities[t - 1] = static_cast<double>(power);
  }
  d.capacities[horizon - 1] = horizon >= 2 ? d.capacities[horizon - 2] : d.capacities[0];
  return validate_instance(std::move(d));
}

struct ThreePartitionInstance {
  Instance instance;
  double target = 0.0;
  // False when some a_i lies outside (B/4, B/2); the instance is still valid
  // but "value == target iff a 3-partition exists" no longer applies.
  bool in_range = true;
};

// Incremental subset sum instance from a 3-partition input of 3m integers:
// v_i = w_i = a_i, T = m, B_t = t·B with B = Σa/m.  The optimum reaches
// B·m(m+1)/2 exactly when every period adds one triple of sum B.
inline ThreePartitionInstance gen_3partition(const std::vector<long long>& a) {
  if (a.empty() || a.size() % 3 != 0) {
    throw Error(ErrorCode::kBadInput, "3-partition needs 3m integers, got " + std::to_string(a.size()));
  }
  const long long m = static_cast<long long>(a.size() / 3);
  long long total = 0;
  for (long long x : a) {
    if (x <= 0) throw Error(ErrorCode::kNonPositiveDatum, "3-partition integers must be positive");
    total += x;
  }
  if (total % m != 0) {
    throw Error(ErrorCode::kNotDivisible, "sum " + std::to_string(total) + " is not divisible by m = " +
                                              std::to_string(m));
  }
  const long long bin = total / m;
  ThreePartitionInstance out;
  InstanceData d;
  d.horizon = static_cast<int>(m);
  for (std::size_t i = 0; i < a.size(); ++i) {
    d.ids.push_back("a" + std::to_string(i + 1));
    d.values.push_back(static_cast<double>(a[i]));
    d.weights.push_back(static_cast<double>(a[i]));
    // Strict range (B/4, B/2), compared in integers.
    if (!(4 * a[i] > bin && 2 * a[i] < bin)) out.in_range = false;
  }
  for (long long t = 1; t <= m; ++t) d.capacities.push_back(static_cast<double>(t * bin));
  out.instance = validate_instance(std::move(d));
  out.target = static_cast<double>(bin * m * (m + 1) / 2);
  return out;
}

struct RandomInstanceSpec {
  std::size_t items = 5;
  int horizon = 3;
  std::uint64_t seed = 1;
  double fill_factor = 0.5;
  double discount_rate = 0.0;  // Δ_t = e^{-rt}, rounded to 1e-6; 0 keeps Δ = 1
  int weight_min = 1;
  int weight_max = 20;
  int value_min = 1;
  int value_max = 50;
};

namespace detail {

// Uniform integer in [lo, hi] from raw mt19937_64 output by rejection, so
// draws do not depend on the standard library's distribution code.
inline long long uniform_int(std::mt19937_64& rng, long long lo, long long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<long long>(draw % span);
}

}  // namespace detail

// Seeded instance: mt19937_64 seeded with `seed`; weights then values are
// drawn item by item, then T capacity increments in [1, 100].  Cumulative
// increments are scaled so that B_T = floor(fill_factor · Σw) and floored.
inline Instance gen_random(const RandomInstanceSpec& spec) {
  if (spec.horizon < 1 || spec.fill_factor < 0.0 || spec.weight_min < 1 ||
      spec.weight_max < spec.weight_min || spec.value_min < 1 || spec.value_max < spec.value_min) {
    throw Error(ErrorCode::kBadInput, "invalid random instance parameters");
  }
  std::mt19937_64 rng(spec.seed);
  InstanceData d;
  d.horizon = spec.horizon;
  double total_weight = 0.0;
  for (std::size_t i = 0; i < spec.items; ++i) {
    d.ids.push_back("i" + std::to_string(i + 1));
    d.weights.push_back(static_cast<double>(detail::uniform_int(rng, spec.weight_min, spec.weight_max)));
    d.values.push_back(static_cast<double>(detail::uniform_int(rng, spec.value_min, spec.value_max)));
    total_weight += d.weights.back();
  }
  std::vector<double> cumulative;
  double running = 0.0;
  for (int t = 0; t < spec.horizon; ++t) {
    running += static_cast<double>(detail::uniform_int(rng, 1, 100));
    cumulative.push_back(running);
  }
  const double final_cap = std::floor(spec.fill_factor * total_weight);
  for (double c : cumulative) d.capacities.push_back(std::floor(c / running * final_cap));
  d.capacities.back() = final_cap;
  for (int t = 1; t <= spec.horizon; ++t) {
    d.discounts.push_back(spec.discount_rate == 0.0
                              ? 1.0
                              : std::round(std::exp(-spec.discount_rate * t) * 1e6) / 1e6);
  }
  return validate_instance(std::move(d));
}

}  // namespace inkspan
