// Copyright 2026 The entsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "entsim/statistics.hpp"

namespace entsim::stats {
namespace {

TEST(ChiSquare, ExactFitHasPValueOne) {
  const auto r = chi_square_gof({250, 250, 500}, {0.25, 0.25, 0.5});
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.dof, 2);
  EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(ChiSquare, ReferenceStatistic) {
  // (60-50)^2/50 + (40-50)^2/50 = 4 with one degree of freedom: p = 0.0455003.
  const auto r = chi_square_gof({60, 40}, {0.5, 0.5});
  EXPECT_NEAR(r.statistic, 4.0, 1e-12);
  EXPECT_NEAR(r.p_value, 0.0455002638963584, 1e-10);
}

TEST(ChiSquare, ImpossibleCellFails) {
  EXPECT_EQ(chi_square_gof({10, 1}, {1.0, 0.0}).p_value, 0.0);
  EXPECT_NEAR(chi_square_gof({10, 0}, {1.0, 0.0}).p_value, 1.0, 1e-12);
}

TEST(ChiSquare, TwoSample) {
  EXPECT_NEAR(chi_square_two_sample({100, 200}, {100, 200}).p_value, 1.0, 1e-12);
  EXPECT_LT(chi_square_two_sample({100, 900}, {900, 100}).p_value, 1e-10);
}

TEST(Binomial, ZAndTail) {
  EXPECT_NEAR(binomial_z(60, 100, 0.5), 2.0, 1e-12);
  EXPECT_EQ(binomial_z(100, 100, 1.0), 0.0);
  EXPECT_TRUE(std::isinf(binomial_z(99, 100, 1.0)));
  // Pr[X >= 2] for Binomial(3, 1/2) = 4/8.
  EXPECT_NEAR(binomial_upper_tail(2, 3, 0.5), 0.5, 1e-12);
  EXPECT_EQ(binomial_upper_tail(0, 3, 0.5), 1.0);
  EXPECT_NEAR(normal_upper_tail(3.0), 0.00134989803163009, 1e-12);
}

TEST(Entropy, PluginAndGeometric) {
  EXPECT_NEAR(plugin_entropy_bits({{1, 5}, {2, 5}}), 1.0, 1e-15);
  EXPECT_NEAR(plugin_entropy_bits({{7, 9}}), 0.0, 1e-15);
  // A fair-coin geometric law has entropy exactly 2 bits.
  EXPECT_NEAR(geometric_entropy_bits(0.5), 2.0, 1e-12);
}

}  // namespace
}  // namespace entsim::stats
