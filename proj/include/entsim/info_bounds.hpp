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

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "entsim/monte_carlo.hpp"

namespace entsim {

// Outcomes a, b are +-1 throughout. The correlation r is E[ab], so the
// singlet with unit directions x, y has r = -x.y, and the planar R(x), R(y)
// measurement on (|00> + |11>)/sqrt(2) has r = 2 Pr[a=b] - 1.

/// p(a, b | r) = (1 + r a b) / 4; index order (+,+), (+,-), (-,+), (-,-).
std::array<double, 4> correlated_joint(double r);

/// I(a:b | r) in bits: (1+r)/2 log2(1+r) + (1-r)/2 log2(1-r).
double mi_given_r(double r);

/// Mutual information in bits of an arbitrary joint table (rows: a).
double discrete_mi_bits(const std::vector<std::vector<double>>& joint);

/// Integral of mi_given_r(r) / 2 over [-1, 1] by adaptive Gauss-Kronrod.
/// Closed form: log2(2 / sqrt(e)).
double average_mi_isotropic();
double average_mi_isotropic(double tolerance, unsigned max_depth);

struct MonteCarloMean {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

/// Average of mi_given_r(-x.y) for x, y independent and uniform on the
/// unit sphere.
MonteCarloMean isotropic_mi_monte_carlo(std::uint64_t samples, std::uint64_t seed);

struct MiEstimate {
  double value = 0.0;           // bits, clamped at 0
  double standard_error = 0.0;  // bits, leave-one-out jackknife
  std::uint64_t sample_count = 0;
  bool degenerate = false;      // a or b constant
};

/// Plug-in MI on the 2x2 table of (a, b) counts with the Miller-Madow
/// correction. Requires at least 1000 samples.
MiEstimate empirical_mi(const EmpiricalStats& stats);
MiEstimate empirical_mi(const std::vector<std::pair<int, int>>& samples);
/// counts[i][j] for a = i-th and b = j-th observed value.
MiEstimate empirical_mi_table(const std::vector<std::vector<std::uint64_t>>& counts);

struct AppendixReport {
  MiEstimate mi;
  double mean_forward = 0.0;
  double mean_backward = 0.0;
  double rhs = 0.0;  // mean C_f + mean C_b
  bool holds = false;
};

/// Checks I(X:Y) <= mean(C_f) + mean(C_b) + 3 SE on a batch of runs of an
/// LHV-free simulation at fixed inputs.
AppendixReport appendix_audit(const Simulation& simulation, const EmpiricalStats& stats);
AppendixReport appendix_audit(const Simulation& simulation, const MonteCarloOptions& options);

}  // namespace entsim
