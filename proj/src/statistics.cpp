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

#include "entsim/statistics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace entsim::stats {
namespace {

double upper_tail(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<double>& expected, double min_expected) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw std::invalid_argument("chi_square_gof: mismatched or empty cells");
  }
  double n = 0.0;
  for (auto o : observed) n += static_cast<double>(o);
  ChiSquareResult out;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected[i] * n;
    const double o = static_cast<double>(observed[i]);
    if (expected[i] <= 0.0) {
      if (observed[i] != 0) {
        out.statistic = std::numeric_limits<double>::infinity();
        out.p_value = 0.0;
        return out;
      }
      continue;
    }
    if (e < min_expected) {
      pooled_obs += o;
      pooled_exp += e;
      continue;
    }
    out.statistic += (o - e) * (o - e) / e;
    ++cells;
  }
  if (pooled_exp > 0.0) {
    out.statistic += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++cells;
  }
  out.dof = cells - 1;
  out.p_value = upper_tail(out.statistic, out.dof);
  return out;
}

ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("chi_square_two_sample: mismatched cells");
  double na = 0.0, nb = 0.0;
  for (auto v : a) na += static_cast<double>(v);
  for (auto v : b) nb += static_cast<double>(v);
  ChiSquareResult out;
  int cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double col = static_cast<double>(a[i] + b[i]);
    if (col == 0.0) continue;
    const double ea = col * na / (na + nb);
    const double eb = col * nb / (na + nb);
    out.statistic += (static_cast<double>(a[i]) - ea) * (static_cast<double>(a[i]) - ea) / ea;
    out.statistic += (static_cast<double>(b[i]) - eb) * (static_cast<double>(b[i]) - eb) / eb;
    ++cells;
  }
  out.dof = cells - 1;
  out.p_value = upper_tail(out.statistic, out.dof);
  return out;
}

double binomial_z(std::uint64_t successes, std::uint64_t trials, double p) {
  const double n = static_cast<double>(trials);
  const double sd = std::sqrt(n * p * (1.0 - p));
  const double diff = static_cast<double>(successes) - n * p;
  if (sd == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(diff) / sd;
}

double binomial_upper_tail(std::uint64_t successes, std::uint64_t trials, double p) {
  if (successes == 0) return 1.0;
  if (successes > trials) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
  return boost::math::cdf(boost::math::complement(dist, static_cast<double>(successes - 1)));
}

double normal_upper_tail(double sigmas) {
  return boost::math::cdf(boost::math::complement(boost::math::normal_distribution<double>(), sigmas));
}

double plugin_entropy_bits(const std::map<std::uint64_t, std::uint64_t>& counts) {
  double n = 0.0;
  for (const auto& [k, v] : counts) n += static_cast<double>(v);
  double h = 0.0;
  for (const auto& [k, v] : counts) {
    if (v == 0) continue;
    const double p = static_cast<double>(v) / n;
    h -= p * std::log2(p);
  }
  return h;
}

double geometric_entropy_bits(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("geometric success probability must be in (0,1]");
  double h = 0.0;
  double pk = p;
  double tail = 1.0;
  for (int k = 1; tail > 1e-17 && pk > 0.0; ++k) {
    h -= pk * std::log2(pk);
    tail -= pk;
    pk *= (1.0 - p);
  }
  return h;
}

}  // namespace entsim::stats
