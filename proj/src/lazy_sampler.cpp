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

#include "entsim/lazy_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entsim {
namespace {

constexpr double kPi = std::numbers::pi;

// Integral of (pi/2)|sin(2 pi s)| over [0, v]; each half period carries 1/2.
double folded_sine_integral(double v) {
  const double k = std::floor(2.0 * v);
  const double f = v - 0.5 * k;
  return 0.5 * k + 0.25 * (1.0 - std::cos(2.0 * kPi * f));
}

}  // namespace

double UniformDensity::cdf(double theta) const { return std::clamp(theta, 0.0, 1.0); }

double ShiftedCosineDensity::pdf(double theta) const {
  return 0.5 * kPi * std::abs(std::cos(2.0 * kPi * (theta - shift_)));
}

double ShiftedCosineDensity::cdf(double theta) const {
  // |cos(2 pi (s - shift))| = |sin(2 pi (s - shift + 1/4))|
  const double offset = 0.25 - shift_;
  return folded_sine_integral(theta + offset) - folded_sine_integral(offset);
}

double ShiftedCosineDensity::mass(double lo, double hi) const {
  if (!(hi > lo)) return 0.0;
  // Zeros of the density sit at shift + 1/4 + k/2.
  const double first_zero = shift_ + 0.25;
  double total = 0.0;
  double a = lo;
  while (a < hi) {
    const double k = std::floor((a - first_zero) * 2.0) + 1.0;
    double z = first_zero + 0.5 * k;
    while (z <= a) z += 0.5;
    const double b = std::min(hi, z);
    if (b > a) {
      // (1/4)|sin(2pi(b-s)) - sin(2pi(a-s))| = (1/2)|cos(pi(a+b-2s)) sin(pi(b-a))|
      total += 0.5 * std::abs(std::cos(kPi * ((a - shift_) + (b - shift_))) * std::sin(kPi * (b - a)));
    }
    a = b;
  }
  return total;
}

double next_bit_probability(const Density& density, const DyadicInterval& interval) {
  const double lo = interval.lo();
  const double hi = interval.hi();
  const double mid = interval.mid();
  const double whole = density.mass(lo, hi);
  if (!(whole > 0.0)) {
    throw std::domain_error("cannot condition on a dyadic interval of zero mass");
  }
  const double upper = density.mass(mid, hi);
  return std::clamp(upper / whole, 0.0, 1.0);
}

int lazy_sample_density(const Density& density, const DyadicInterval& interval, CounterRng& rng) {
  return rng.uniform() < next_bit_probability(density, interval) ? 1 : 0;
}

void lazy_refine(const Density& density, DyadicInterval& interval, int bits, CounterRng& rng) {
  for (int i = 0; i < bits; ++i) interval.refine(lazy_sample_density(density, interval, rng));
}

}  // namespace entsim
