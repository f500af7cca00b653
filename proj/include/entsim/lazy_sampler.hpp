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

#pragma once

#include <functional>

#include "entsim/dyadic.hpp"
#include "entsim/rng.hpp"

namespace entsim {

/// A probability density on [0,1) with its cumulative function.
class Density {
 public:
  virtual ~Density() = default;
  virtual double pdf(double theta) const = 0;
  virtual double cdf(double theta) const = 0;
  /// Probability mass of [lo, hi). The default differences the CDF;
  /// subclasses override where that cancels badly on short intervals.
  virtual double mass(double lo, double hi) const { return cdf(hi) - cdf(lo); }
};

class UniformDensity final : public Density {
 public:
  double pdf(double) const override { return 1.0; }
  double cdf(double theta) const override;
  double mass(double lo, double hi) const override { return hi - lo; }
};

/// p(theta) = (pi/2) |cos(2 pi (theta - shift))|.
class ShiftedCosineDensity final : public Density {
 public:
  explicit ShiftedCosineDensity(double shift) : shift_(shift) {}
  double shift() const noexcept { return shift_; }
  double pdf(double theta) const override;
  double cdf(double theta) const override;
  /// Splits at the zeros of the density and integrates each piece with a
  /// product formula, so relative accuracy holds on tiny intervals.
  double mass(double lo, double hi) const override;

 private:
  double shift_;
};

/// Density given by a pair of callables.
class FunctionDensity final : public Density {
 public:
  FunctionDensity(std::function<double(double)> pdf, std::function<double(double)> cdf)
      : pdf_(std::move(pdf)), cdf_(std::move(cdf)) {}
  double pdf(double theta) const override { return pdf_(theta); }
  double cdf(double theta) const override { return cdf_(theta); }

 private:
  std::function<double(double)> pdf_;
  std::function<double(double)> cdf_;
};

/// Pr[next bit = 1 | theta in interval] = mass(mid, hi) / mass(lo, hi).
/// Throws std::domain_error when the interval carries no mass.
double next_bit_probability(const Density& density, const DyadicInterval& interval);

/// Draws the next binary digit of theta given its current prefix. Appending
/// the returned bits produces a theta distributed exactly per `density`.
int lazy_sample_density(const Density& density, const DyadicInterval& interval, CounterRng& rng);

/// Refines `interval` in place by `bits` further digits.
void lazy_refine(const Density& density, DyadicInterval& interval, int bits, CounterRng& rng);

}  // namespace entsim
