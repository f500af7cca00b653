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
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "entsim/monte_carlo.hpp"
#include "entsim/quantum_core.hpp"
#include "entsim/random_instances.hpp"
#include "entsim/rng.hpp"
#include "entsim/statistics.hpp"
#include "entsim/teleport.hpp"

namespace entsim {
namespace {

TEST(Alpha, ReferenceValues) {
  // 2^(n/2 - m + 1/2) + 2^(n - 2m - 1), evaluated at 30 digits.
  EXPECT_NEAR(alpha_bound(2, 4), 0.184589195296636881, 1e-15);
  EXPECT_NEAR(alpha_bound(0, 1), 0.832106781186547524, 1e-15);
  EXPECT_LT(alpha_bound(2, 4), 0.25);
  EXPECT_THROW(alpha_bound(4, 1), std::domain_error);
  EXPECT_THROW(alpha_bound(3, 1), std::domain_error);
  EXPECT_NO_THROW(alpha_bound(3, 2));
}

TEST(Alpha, DecreasingAndBelowLooseBound) {
  for (int n = 0; n <= 6; ++n) {
    for (int m = (n + 1) / 2; m < 60; ++m) {
      ASSERT_LT(alpha_bound(n, m + 1), alpha_bound(n, m));
      ASSERT_LE(alpha_bound(n, m), std::exp2(n / 2.0 - m + 1));
      // Upward rounding: never below the real-valued expression.
      ASSERT_GE(alpha_bound(n, m), std::exp2(n / 2.0 - m + 0.5) + std::exp2(n - 2.0 * m - 1));
    }
  }
}

TEST(Payload, Sizes) {
  EXPECT_EQ(first_round_level(1), 4);
  EXPECT_EQ(first_round_level(2), 5);
  EXPECT_EQ(first_round_level(3), 7);
  EXPECT_EQ(round_payload_bits(1, 1), 20u);
  EXPECT_EQ(round_payload_bits(2, 1), 48u);
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(round_payload_bits(n, 2), std::size_t{2} << n);
  CounterRng rng(3);
  for (int n = 1; n <= 3; ++n) {
    const auto s = random_state(n, rng);
    for (int k = 1; k <= 4; ++k) EXPECT_EQ(encode_round(s, k).size(), round_payload_bits(n, k));
  }
}

TEST(Payload, MagnitudeDigits) {
  EXPECT_EQ(magnitude_digit(0.75, 1), 1);
  EXPECT_EQ(magnitude_digit(0.75, 2), 1);
  EXPECT_EQ(magnitude_digit(0.75, 3), 0);
  EXPECT_EQ(magnitude_digit(-0.25, 2), 1);
  for (int r = 1; r < 60; ++r) EXPECT_EQ(magnitude_digit(1.0, r), 1);
}

TEST(AmplitudeCode, MidpointWithinHalfUlpOfLevel) {
  CounterRng rng(4);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 3;
    const auto s = random_state(n, rng);
    for (int m : {1, 3, first_round_level(n), first_round_level(n) + 7}) {
      const auto code = AmplitudeCode::from_state(s, m);
      ASSERT_EQ(code.level(), m);
      for (std::size_t c = 0; c < code.components(); ++c) {
        const auto z = s.amplitude(c / 2);
        const double v = c % 2 == 0 ? z.real() : z.imag();
        ASSERT_LE(std::abs(v - code.midpoint(c)), std::ldexp(1.0, -m - 1) * (1 + 1e-12));
      }
    }
  }
}

TEST(AmplitudeCode, StreamedRoundsMatchDirectEncoding) {
  CounterRng rng(5);
  const auto s = random_state(2, rng);
  AmplitudeCode streamed(2);
  for (int k = 1; k <= 6; ++k) streamed.absorb_round(encode_round(s, k), k);
  const auto direct = AmplitudeCode::from_state(s, level_after_round(2, 6));
  EXPECT_TRUE(streamed.estimate().isApprox(direct.estimate(), 0.0));
  EXPECT_THROW(streamed.absorb_round(encode_round(s, 8), 8), ProtocolError);
  AmplitudeCode fresh(2);
  EXPECT_THROW(fresh.absorb_round("0101", 1), ProtocolError);
}

struct Instance {
  PureState state;
  Rank1Refinement povm;
};

Instance random_instance(CounterRng& rng, int n) {
  const std::size_t outcomes = (std::size_t{1} << n) + rng() % 3;
  return {random_state(n, rng), rank1_decompose(random_rank1_povm(n, outcomes, rng))};
}

TEST(Brackets, SoundAndMonotoneOnRandomInstances) {
  CounterRng rng(6);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 2;
    const auto inst = random_instance(rng, n);
    const auto truth = born_probabilities(inst.state, inst.povm.povm);
    const int m = (n + 1) / 2 + static_cast<int>(rng() % 25);
    const auto b0 = bob_brackets(AmplitudeCode::from_state(inst.state, m), inst.povm);
    const auto b1 = bob_brackets(AmplitudeCode::from_state(inst.state, m + 1), inst.povm);
    for (std::size_t l = 0; l < truth.size(); ++l) {
      ASSERT_GE(truth[l], b0[l].p_min);
      ASSERT_LE(truth[l], b0[l].p_max);
      ASSERT_GE(b1[l].p_min, b0[l].p_min);
      ASSERT_LE(b1[l].p_max, b0[l].p_max);
      ASSERT_LE(b0[l].p_max - b0[l].p_min, std::exp2(n / 2.0 - m + 2) * b0[l].trace);
    }
  }
}

TEST(Brackets, DyadicStateHasSlack) {
  const auto povm = rank1_decompose(Povm::computational(1));
  const auto b = bob_brackets(AmplitudeCode::from_state(PureState::basis(1, 0), 4), povm);
  EXPECT_LE(b[0].p_min, 1.0);
  EXPECT_GE(b[0].p_max, 1.0);
  EXPECT_LE(b[1].p_min, 0.0);
  EXPECT_LT(std::abs(b[0].p_est - 1.0), b[0].alpha * b[0].trace);
}

TEST(Brackets, TotalLowerMassBound) {
  // The decoded state is not renormalized, so sum_l P^m(l) can fall short of 1.
  // What holds is T^m >= sum_l P^m(l) - alpha 2^n, and since that sum is itself
  // within alpha 2^n of 1, T^m >= 1 - 2^(3n/2 - m + 2).
  CounterRng rng(7);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 2;
    const auto inst = random_instance(rng, n);
    for (int m = n / 2 + 1; m < 40; ++m) {
      const auto brackets = bob_brackets(AmplitudeCode::from_state(inst.state, m), inst.povm);
      double tm = 0.0;
      double est = 0.0;
      for (const auto& b : brackets) {
        tm += b.p_min;
        est += b.p_est;
      }
      const double spread = alpha_bound(n, m) * std::exp2(n);
      ASSERT_GE(tm, est - spread - 1e-12) << "n=" << n << " m=" << m;
      ASSERT_GE(tm, 1.0 - std::exp2(1.5 * n - m + 2) - 1e-12) << "n=" << n << " m=" << m;
    }
  }
}

std::vector<std::vector<ProbBracket>> bracket_sequence(const Instance& inst, int rounds) {
  std::vector<std::vector<ProbBracket>> seq;
  for (int k = 1; k <= rounds; ++k) {
    seq.push_back(bob_brackets(AmplitudeCode::from_state(inst.state, level_after_round(inst.state.qubits(), k)),
                               inst.povm));
  }
  return seq;
}

TEST(Layout, SingleOutcomeConverges) {
  const Povm identity(1, std::vector<Eigen::MatrixXcd>{Eigen::MatrixXcd::Identity(2, 2)});
  CounterRng rng(8);
  const Instance inst{random_state(1, rng), rank1_decompose(identity)};
  const auto layout = build_layout(bracket_sequence(inst, 20));
  EXPECT_TRUE(verify_layout(layout).empty());
  EXPECT_LT(layout.remainder(20).length(), std::ldexp(1.0, -20));
}

TEST(Layout, BasisStateConverges) {
  const Instance inst{PureState::basis(1, 0), rank1_decompose(Povm::computational(1))};
  const auto layout = build_layout(bracket_sequence(inst, 20));
  EXPECT_TRUE(verify_layout(layout).empty());
  for (int k = 1; k <= 20; ++k) EXPECT_LE(layout.remainder(k).length(), std::ldexp(1.0, -k));
  EXPECT_NEAR(layout.accumulated(20, 0), 1.0, std::ldexp(1.0, -20));
  EXPECT_NEAR(layout.accumulated(20, 1), 0.0, std::ldexp(1.0, -20));
}

TEST(Layout, RandomInstancesSatisfyAllProperties) {
  CounterRng rng(9);
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_instance(rng, 1 + t % 2);
    const auto layout = build_layout(bracket_sequence(inst, 20));
    const auto failures = verify_layout(layout, 1e-12);
    ASSERT_TRUE(failures.empty()) << failures.front();
    for (int k = 1; k <= 20; ++k) ASSERT_LE(layout.remainder(k).length(), std::ldexp(1.0, -k));
    const auto truth = born_probabilities(inst.state, inst.povm.povm);
    for (std::size_t l = 0; l < truth.size(); ++l) {
      const double acc = layout.accumulated(20, l);
      ASSERT_LE(acc, truth[l] + 1e-12);
      ASSERT_GE(acc, truth[l] - layout.remainder(20).length() - 1e-12);
    }
  }
}

TEST(Layout, RejectsNonMonotoneBrackets) {
  std::vector<ProbBracket> first{{0.5, 0.4, 0.6, 0.1, 1.0}, {0.5, 0.4, 0.6, 0.1, 1.0}};
  std::vector<ProbBracket> worse{{0.5, 0.3, 0.6, 0.1, 1.0}, {0.5, 0.45, 0.55, 0.1, 1.0}};
  IntervalLayout layout(2);
  layout.add_round(first);
  EXPECT_THROW(layout.add_round(worse), LayoutError);
  std::vector<ProbBracket> overfull{{0.6, 0.6, 0.6, 0.0, 1.0}, {0.6, 0.6, 0.6, 0.0, 1.0}};
  IntervalLayout fresh(2);
  EXPECT_THROW(fresh.add_round(overfull), LayoutError);
}

MonteCarloOptions opts(std::uint64_t trials, std::uint64_t seed) {
  MonteCarloOptions o;
  o.trials = trials;
  o.master_seed = seed;
  o.workers = default_workers();
  return o;
}

TEST(Teleport, BasisStateAlwaysOutcomeZero) {
  TeleportProtocol proto(PureState::basis(1, 0), Povm::computational(1));
  const auto st = monte_carlo(proto, opts(100000, 1)).stats;
  EXPECT_EQ(st.bob_counts().size(), 1u);
  EXPECT_EQ(st.bob_counts().begin()->first, 0);
}

TEST(Teleport, CostIdentityOnEveryRun) {
  CounterRng rng(10);
  for (int n = 1; n <= 2; ++n) {
    const auto s = random_state(n, rng);
    TeleportProtocol proto(s, random_rank1_povm(n, (std::size_t{1} << n) + 1, rng));
    const std::uint64_t c1 = round_payload_bits(n, 1), c2 = round_payload_bits(n, 2);
    for (std::uint64_t t = 0; t < 3000; ++t) {
      const auto r = proto.run(trial_randomness(11, t, false));
      const auto k = static_cast<std::uint64_t>(r.transcript.rounds());
      ASSERT_EQ(r.transcript.forward_bits(), c1 + (k - 1) * c2);
      ASSERT_EQ(r.transcript.forward_bits(), proto.forward_bits_for(r.transcript.rounds()));
      ASSERT_EQ(r.transcript.backward_bits(), k);
    }
  }
}

TEST(Teleport, OutcomesMatchBornRule) {
  CounterRng rng(12);
  for (int n = 1; n <= 2; ++n) {
    const auto s = random_state(n, rng);
    const auto povm = n == 1 ? random_full_rank_povm(1, 3, rng) : random_rank1_povm(2, 5, rng);
    TeleportProtocol proto(s, povm);
    const std::uint64_t trials = n == 1 ? 1000000 : 200000;
    const auto st = monte_carlo(proto, opts(trials, 13 + n)).stats;
    const auto born = born_probabilities(s, povm);
    std::vector<std::uint64_t> observed(born.size(), 0);
    for (const auto& [l, c] : st.bob_counts()) observed.at(static_cast<std::size_t>(l)) += c;
    EXPECT_GT(stats::chi_square_gof(observed, born).p_value, 0.001) << "n=" << n;
    EXPECT_LT(st.mean_backward(), 2.0);
  }
}

TEST(Entangled, JointDistributionMatches) {
  CounterRng rng(14);
  const auto a = random_rank1_povm(1, 3, rng);
  const auto b = random_full_rank_povm(1, 2, rng);
  EntangledProtocol proto(a, b);
  const auto joint = proto.joint_distribution();
  double total = 0.0;
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;
  const auto st = monte_carlo(proto, opts(300000, 15)).stats;
  for (std::size_t k = 0; k < joint.size(); ++k) {
    double row = 0.0;
    for (std::size_t l = 0; l < joint[k].size(); ++l) {
      row += joint[k][l];
      observed.push_back(st.joint_count(static_cast<std::int64_t>(k), static_cast<std::int64_t>(l)));
      expected.push_back(joint[k][l]);
    }
    // Alice's marginal on a maximally entangled state is Tr(A_k) / 2^n.
    EXPECT_NEAR(row, a.element(k).trace() / 2.0, 1e-12);
    total += row;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_GT(stats::chi_square_gof(observed, expected).p_value, 0.001);
}

TEST(Entangled, SameBasisPerfectCorrelation) {
  EntangledProtocol proto(Povm::computational(1), Povm::computational(1));
  const auto st = monte_carlo(proto, opts(20000, 16)).stats;
  EXPECT_EQ(st.joint_count(0, 1) + st.joint_count(1, 0), 0u);
}

}  // namespace
}  // namespace entsim
