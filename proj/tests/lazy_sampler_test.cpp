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
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "entsim/lazy_sampler.hpp"
#include "entsim/rng.hpp"
#include "entsim/statistics.hpp"

namespace entsim {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(NextBit, UniformEmptyPrefix) {
  EXPECT_DOUBLE_EQ(next_bit_probability(UniformDensity{}, DyadicInterval{}), 0.5);
}

TEST(NextBit, CosineReferenceValues) {
  const ShiftedCosineDensity cosine(0.0);
  // Frozen from 30-digit quadrature of (pi/2)|cos(2 pi t)|.
  EXPECT_NEAR(next_bit_probability(cosine, DyadicInterval{}), 0.5, 1e-15);
  EXPECT_NEAR(next_bit_probability(cosine, DyadicInterval::from_prefix("0")), 0.5, 1e-14);
  EXPECT_NEAR(next_bit_probability(cosine, DyadicInterval::from_prefix("01")), 0.707106781186547524, 1e-14);
  const ShiftedCosineDensity shifted(0.1);
  EXPECT_NEAR(next_bit_probability(shifted, DyadicInterval::from_prefix("1")), 0.301598876666289720, 1e-13);
}

TEST(CosineDensity, CdfAndMassAreConsistent) {
  for (double shift : {0.0, 0.1, 0.37, 0.9}) {
    const ShiftedCosineDensity d(shift);
    EXPECT_NEAR(d.cdf(0.0), 0.0, 1e-15);
    EXPECT_NEAR(d.cdf(1.0), 1.0, 1e-14);
    double prev = 0.0;
    for (int i = 1; i <= 256; ++i) {
      const double a = (i - 1) / 256.0, b = i / 256.0;
      ASSERT_NEAR(d.mass(a, b), d.cdf(b) - d.cdf(a), 1e-14);
      ASSERT_GE(d.mass(a, b), 0.0);
      ASSERT_GE(d.cdf(b), prev - 1e-15);
      prev = d.cdf(b);
      // Midpoint rule against the pdf on a fine bin.
      ASSERT_NEAR(d.mass(a, b), d.pdf((a + b) / 2) / 256.0, 1e-4);
    }
  }
}

TEST(LazySample, ZeroMassIsRejected) {
  const FunctionDensity upper_half([](double t) { return t < 0.5 ? 0.0 : 2.0; },
                                   [](double t) { return t < 0.5 ? 0.0 : 2.0 * t - 1.0; });
  CounterRng rng(1);
  EXPECT_THROW(lazy_sample_density(upper_half, DyadicInterval::from_prefix("0"), rng), std::domain_error);
  EXPECT_NO_THROW(lazy_sample_density(upper_half, DyadicInterval::from_prefix("1"), rng));
}

// 20-bit refinements binned into 64 cells against the analytic density.
double gof_p_value(const Density& d, std::uint64_t seed, int samples = 1000000) {
  constexpr int kBins = 64;
  std::vector<std::uint64_t> counts(kBins, 0);
  CounterRng rng(seed);
  for (int i = 0; i < samples; ++i) {
    DyadicInterval iv;
    lazy_refine(d, iv, 20, rng);
    ++counts[static_cast<std::size_t>(iv.lo() * kBins)];
  }
  std::vector<double> expected(kBins);
  for (int b = 0; b < kBins; ++b) expected[b] = d.mass(b / double(kBins), (b + 1) / double(kBins));
  return stats::chi_square_gof(counts, expected).p_value;
}

TEST(LazySample, UniformGoodnessOfFit) { EXPECT_GT(gof_p_value(UniformDensity{}, 10), 0.001); }

TEST(LazySample, CosineGoodnessOfFit) {
  EXPECT_GT(gof_p_value(ShiftedCosineDensity(0.0), 11), 0.001);
  EXPECT_GT(gof_p_value(ShiftedCosineDensity(0.37), 12), 0.001);
}

TEST(LazySample, PolynomialGoodnessOfFit) {
  const FunctionDensity ramp([](double t) { return 2.0 * t; }, [](double t) { return t * t; });
  EXPECT_GT(gof_p_value(ramp, 13), 0.001);
}

TEST(LazySample, SecondBitMatchesRejectionSampling) {
  // Given first bit 0, the frequency of second bit 1 from lazy sampling and
  // from rejection sampling of the density agree.
  const ShiftedCosineDensity d(0.05);
  CounterRng rng(21);
  constexpr int kN = 1000000;
  std::uint64_t lazy_ones = 0;
  for (int i = 0; i < kN; ++i) {
    lazy_ones += static_cast<std::uint64_t>(lazy_sample_density(d, DyadicInterval::from_prefix("0"), rng));
  }
  std::uint64_t rej_ones = 0, rej_total = 0;
  while (rej_total < kN) {
    const double t = rng.uniform();
    if (t >= 0.5) continue;
    if (rng.uniform() * (kPi / 2) > d.pdf(t)) continue;
    ++rej_total;
    rej_ones += t >= 0.25 ? 1 : 0;
  }
  const auto chi = stats::chi_square_two_sample({lazy_ones, kN - lazy_ones}, {rej_ones, rej_total - rej_ones});
  EXPECT_GT(chi.p_value, 0.001);
}

}  // namespace
}  // namespace entsim
