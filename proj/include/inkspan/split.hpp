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

#include "inkspan/error.hpp"
#include "inkspan/instance.hpp"

namespace inkspan {

// A period t_kappa at which the remaining capacity growth is at most
// kappa·B_T, together with the smallest S for which the discount mass before
// t_kappa is at most S times the mass from t_kappa on.
struct SplitInfo {
  double kappa = 1.0;
  Period period = 1;
  double s = 0.0;
};

// The ratio Σ_{t'<t}Δ / Σ_{t'≥t}Δ is nondecreasing in t, so the earliest
// period meeting the capacity condition attains the minimum.
inline SplitInfo split_time(const Instance& inst, double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw Error(ErrorCode::kBadInput, "kappa must lie in (0, 1]");
  const int horizon = inst.horizon();
  const double final_cap = inst.capacity(horizon);
  const double slack = 1e-12 * std::max(1.0, final_cap);
  for (Period t = 1; t <= horizon; ++t) {
    if (final_cap - inst.capacity(t) <= kappa * final_cap + slack) {
      return {kappa, t, inst.discount_sum(1, t - 1) / inst.discount_sum(t, horizon)};
    }
  }
  return {kappa, horizon, inst.discount_sum(1, horizon - 1) / inst.discount(horizon)};
}

// Approximation factor promised by the constant-factor algorithm:
// min{1/9, 1/(6·max{1, S(1/2)})}.
inline double guarantee_factor(const Instance& inst) {
  const double s = split_time(inst, 0.5).s;
  return std::min(1.0 / 9.0, 1.0 / (6.0 * std::max(1.0, s)));
}

}  // namespace inkspan
