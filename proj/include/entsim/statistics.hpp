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

#include <cstdint>
#include <map>
#include <vector>

namespace entsim::stats {

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of `observed` counts against `expected`
/// probabilities. Cells with zero expected probability must be empty;
/// cells whose expected count falls below `min_expected` are pooled.
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<double>& expected, double min_expected = 5.0);

/// Two-sample homogeneity test on two count vectors over the same cells.
ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b);

/// |observed - expected| in units of the binomial standard deviation.
double binomial_z(std::uint64_t successes, std::uint64_t trials, double p);

/// Pr[X >= successes] for X ~ Binomial(trials, p).
double binomial_upper_tail(std::uint64_t successes, std::uint64_t trials, double p);

/// One-sided tail probability beyond `sigmas` standard normal deviations.
double normal_upper_tail(double sigmas);

/// Shannon entropy (bits) of the empirical distribution in `counts`.
double plugin_entropy_bits(const std::map<std::uint64_t, std::uint64_t>& counts);

/// Entropy (bits) of the geometric law Pr[k] = (1-p)^(k-1) p, by direct
/// summation until the tail is below 1e-17.
double geometric_entropy_bits(double p);

}  // namespace entsim::stats
