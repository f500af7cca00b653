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

#include "entsim/info_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "entsim/random_instances.hpp"

namespace entsim {
namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Miller-Madow corrected MI of a count table, in bits.
double corrected_mi(const std::vector<std::vector<double>>& counts, double n) {
  const std::size_t rows = counts.size();
  const std::size_t cols = counts.front().size();
  std::vector<double> ra(rows, 0.0), cb(cols, 0.0);
  int nonzero_joint = 0;
  double h_joint = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double c = counts[i][j];
      ra[i] += c;
      cb[j] += c;
      if (c > 0.0) {
        ++nonzero_joint;
        h_joint -= xlog2x(c / n);
      }
    }
  }
  int nonzero_a = 0, nonzero_b = 0;
  double h_a = 0.0, h_b = 0.0;
  for (double c : ra) {
    if (c > 0.0) {
      ++nonzero_a;
      h_a -= xlog2x(c / n);
    }
  }
  for (double c : cb) {
    if (c > 0.0) {
      ++nonzero_b;
      h_b -= xlog2x(c / n);
    }
  }
  const double bias = (nonzero_a - 1 + nonzero_b - 1 - (nonzero_joint - 1)) / (2.0 * n * std::numbers::ln2);
  return h_a + h_b - h_joint + bias;
}

}  // namespace

std::array<double, 4> correlated_joint(double r) {
  if (!(std::abs(r) <= 1.0)) throw std::domain_error("correlation must lie in [-1, 1]");
  return {(1.0 + r) / 4.0, (1.0 - r) / 4.0, (1.0 - r) / 4.0, (1.0 + r) / 4.0};
}

double mi_given_r(double r) {
  if (!(std::abs(r) <= 1.0)) throw std::domain_error("correlation must lie in [-1, 1]");
  return 0.5 * xlog2x(1.0 + r) + 0.5 * xlog2x(1.0 - r);
}

double discrete_mi_bits(const std::vector<std::vector<double>>& joint) {
  if (joint.empty() || joint.front().empty()) throw std::invalid_argument("empty joint table");
  std::vector<double> pa(joint.size(), 0.0), pb(joint.front().size(), 0.0);
  for (std::size_t i = 0; i < joint.size(); ++i) {
    for (std::size_t j = 0; j < joint[i].size(); ++j) {
      pa[i] += joint[i][j];
      pb[j] += joint[i][j];
    }
  }
  double mi = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    for (std::size_t j = 0; j < joint[i].size(); ++j) {
      const double p = joint[i][j];
      if (p > 0.0) mi += p * std::log2(p / (pa[i] * pb[j]));
    }
  }
  return mi;
}

double average_mi_isotropic() { return average_mi_isotropic(1e-12, 20); }

double average_mi_isotropic(double tolerance, unsigned max_depth) {
  auto integrand = [](double r) { return 0.5 * mi_given_r(std::clamp(r, -1.0, 1.0)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -1.0, 1.0, max_depth,
                                                                       tolerance);
}

MonteCarloMean isotropic_mi_monte_carlo(std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  CounterRng rng(seed);
  auto unit = [&rng]() {
    // Uniform on the sphere: z uniform on [-1,1], azimuth uniform.
    const double z = 2.0 * rng.uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return std::array<double, 3>{s * std::cos(phi), s * std::sin(phi), z};
  };
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto x = unit();
    const auto y = unit();
    const double r = std::clamp(-(x[0] * y[0] + x[1] * y[1] + x[2] * y[2]), -1.0, 1.0);
    const double v = mi_given_r(r);
    sum += v;
    sum2 += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), samples};
}

MiEstimate empirical_mi_table(const std::vector<std::vector<std::uint64_t>>& counts) {
  MiEstimate out;
  if (counts.empty() || counts.front().empty()) throw std::invalid_argument("empty count table");
  std::vector<std::vector<double>> c(counts.size(), std::vector<double>(counts.front().size()));
  double n = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].size() != counts.front().size()) throw std::invalid_argument("ragged count table");
    for (std::size_t j = 0; j < counts[i].size(); ++j) {
      c[i][j] = static_cast<double>(counts[i][j]);
      n += c[i][j];
    }
  }
  out.sample_count = static_cast<std::uint64_t>(n);
  if (n < 1000.0) throw std::invalid_argument("empirical_mi needs at least 1000 samples");

  std::size_t live_rows = 0, live_cols = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double s = 0.0;
    for (double v : c[i]) s += v;
    if (s > 0.0) ++live_rows;
  }
  for (std::size_t j = 0; j < c.front().size(); ++j) {
    double s = 0.0;
    for (const auto& row : c) s += row[j];
    if (s > 0.0) ++live_cols;
  }
  if (live_rows < 2 || live_cols < 2) {
    out.degenerate = true;
    return out;
  }

  const double full = corrected_mi(c, n);
  // Jackknife: every sample in a cell has the same leave-one-out value.
  double mean_loo = 0.0;
  std::vector<std::pair<double, double>> loo;  // (value, multiplicity)
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c[i].size(); ++j) {
      if (c[i][j] == 0.0) continue;
      auto reduced = c;
      reduced[i][j] -= 1.0;
      const double v = corrected_mi(reduced, n - 1.0);
      loo.emplace_back(v, c[i][j]);
      mean_loo += v * c[i][j];
    }
  }
  mean_loo /= n;
  double ss = 0.0;
  for (const auto& [v, w] : loo) ss += w * (v - mean_loo) * (v - mean_loo);
  out.standard_error = std::sqrt((n - 1.0) / n * ss);
  out.value = std::max(0.0, full);
  return out;
}

MiEstimate empirical_mi(const std::vector<std::pair<int, int>>& samples) {
  std::vector<std::vector<std::uint64_t>> t(2, std::vector<std::uint64_t>(2, 0));
  for (const auto& [a, b] : samples) ++t[a > 0 ? 0 : 1][b > 0 ? 0 : 1];
  return empirical_mi_table(t);
}

MiEstimate empirical_mi(const EmpiricalStats& stats) {
  std::map<std::int64_t, std::size_t> arow, bcol;
  for (const auto& [k, v] : stats.joint_counts()) {
    arow.emplace(k.first, 0);
    bcol.emplace(k.second, 0);
  }
  std::size_t idx = 0;
  for (auto& [k, v] : arow) v = idx++;
  idx = 0;
  for (auto& [k, v] : bcol) v = idx++;
  std::vector<std::vector<std::uint64_t>> t(std::max<std::size_t>(arow.size(), 1),
                                            std::vector<std::uint64_t>(std::max<std::size_t>(bcol.size(), 1), 0));
  for (const auto& [k, v] : stats.joint_counts()) t[arow[k.first]][bcol[k.second]] += v;
  return empirical_mi_table(t);
}

AppendixReport appendix_audit(const Simulation& simulation, const EmpiricalStats& stats) {
  if (simulation.uses_shared_randomness()) {
    throw std::invalid_argument("the communication bound on mutual information needs an LHV-free protocol");
  }
  AppendixReport rep;
  rep.mi = empirical_mi(stats);
  rep.mean_forward = stats.mean_forward();
  rep.mean_backward = stats.mean_backward();
  rep.rhs = rep.mean_forward + rep.mean_backward;
  rep.holds = rep.mi.value <= rep.rhs + 3.0 * rep.mi.standard_error;
  return rep;
}

AppendixReport appendix_audit(const Simulation& simulation, const MonteCarloOptions& options) {
  if (options.trials < 100000) throw std::invalid_argument("appendix_audit needs at least 1e5 runs");
  return appendix_audit(simulation, monte_carlo(simulation, options).stats);
}

}  // namespace entsim
