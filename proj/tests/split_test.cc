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

#include "inkspan/split.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "inkspan/generators.hpp"
#include "test_util.h"

namespace inkspan {
namespace {

Instance WithCapacities(std::vector<double> caps) {
  const int horizon = static_cast<int>(caps.size());
  return validate_instance({{}, {1}, {1}, horizon, std::move(caps), {}});
}

TEST(SplitTime, LinearCapacityHalf) {
  const SplitInfo s = split_time(WithCapacities({1, 2, 3, 4}), 0.5);
  EXPECT_EQ(s.period, 2);
  EXPECT_NEAR(s.s, 1.0 / 3.0, 1e-15);
}

TEST(SplitTime, KappaOneSplitsAtStart) {
  const SplitInfo s = split_time(WithCapacities({1, 5, 9}), 1.0);
  EXPECT_EQ(s.period, 1);
  EXPECT_EQ(s.s, 0.0);
}

TEST(SplitTime, LateJump) {
  const SplitInfo s = split_time(WithCapacities({1, 1, 1, 10}), 0.5);
  EXPECT_EQ(s.period, 4);
  EXPECT_EQ(s.s, 3.0);
}

TEST(SplitTime, ZeroFinalCapacity) {
  const SplitInfo s = split_time(WithCapacities({0, 0, 0}), 0.25);
  EXPECT_EQ(s.period, 1);
  EXPECT_EQ(s.s, 0.0);
}

TEST(SplitTime, RejectsBadKappa) {
  EXPECT_THROW(split_time(WithCapacities({1}), 0.0), Error);
  EXPECT_THROW(split_time(WithCapacities({1}), 1.5), Error);
}

TEST(GuaranteeFactor, Examples) {
  EXPECT_DOUBLE_EQ(guarantee_factor(testing::MakeE2()), 1.0 / 9.0);
  EXPECT_EQ(split_time(testing::MakeE2(), 0.5).period, 1);
  EXPECT_DOUBLE_EQ(guarantee_factor(WithCapacities({1, 1, 1, 10})), 1.0 / 18.0);
  EXPECT_DOUBLE_EQ(guarantee_factor(WithCapacities({7, 7, 7})), 1.0 / 9.0);
}

TEST(SplitProperty, DecreasingInKappa) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = gen_random({.items = 3, .horizon = 8, .seed = seed, .fill_factor = 0.8,
                                      .discount_rate = (seed % 2) ? 0.1 : 0.0});
    double prev = std::numeric_limits<double>::infinity();
    for (int step = 1; step <= 20; ++step) {
      const double s = split_time(inst, step / 20.0).s;
      EXPECT_LE(s, prev) << seed;
      prev = s;
    }
  }
}

TEST(SplitProperty, PolynomialCapacityAsymptotics) {
  const int horizon = 200;
  for (int p = 1; p <= 3; ++p) {
    std::vector<double> caps;
    for (int t = 1; t <= horizon; ++t) caps.push_back(std::pow(t, p));
    const double root = std::pow(0.5, 1.0 / p);
    const double predicted = root / (1.0 - root);
    const double s = split_time(WithCapacities(caps), 0.5).s;
    EXPECT_LE(std::abs(s - predicted), 0.25 * predicted) << "p=" << p;
  }
}

}  // namespace
}  // namespace inkspan
