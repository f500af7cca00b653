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
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "entsim/quantum_core.hpp"
#include "entsim/random_instances.hpp"
#include "entsim/rng.hpp"

namespace entsim {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(RMatrix, ReferenceAngles) {
  const auto r0 = r_matrix(0.0);
  EXPECT_NEAR(r0(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(r0(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(r0(1, 1), -1.0, 1e-15);

  const auto rq = r_matrix(0.25);
  EXPECT_NEAR(rq(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(rq(0, 1), 1.0, 1e-15);

  const auto r8 = r_matrix(0.125);
  const double h = std::sqrt(2.0) / 2.0;
  EXPECT_NEAR(r8(0, 0), h, 1e-15);
  EXPECT_NEAR(r8(0, 1), h, 1e-15);
  EXPECT_NEAR(r8(1, 0), h, 1e-15);
  EXPECT_NEAR(r8(1, 1), -h, 1e-15);
}

TEST(RMatrix, EigenvaluesArePlusMinusOne) {
  for (int i = 0; i < 64; ++i) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(r_matrix(i / 64.0));
    EXPECT_NEAR(es.eigenvalues()(0), -1.0, 1e-12);
    EXPECT_NEAR(es.eigenvalues()(1), 1.0, 1e-12);
  }
}

TEST(BellJoint, EqualAngles) {
  const auto d = bell_joint_distribution(0.3, 0.3);
  EXPECT_NEAR(d.prob(1, 1), 0.5, 1e-12);
  EXPECT_NEAR(d.prob(-1, -1), 0.5, 1e-12);
  EXPECT_NEAR(d.agree(), 1.0, 1e-12);
}

TEST(BellJoint, QuarterTurnIsUniform) {
  const auto d = bell_joint_distribution(0.25, 0.0);
  for (double p : d.p) EXPECT_NEAR(p, 0.25, 1e-12);
}

TEST(BellJoint, EighthTurnFrozenValue) {
  // cos^2(pi/8), evaluated at 30 digits.
  EXPECT_NEAR(bell_joint_distribution(0.125, 0.0).agree(), 0.853553390593273762, 1e-12);
}

TEST(BellJoint, GridMarginalsAndAgreement) {
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      const double x = i / 64.0, y = j / 64.0;
      const auto d = bell_joint_distribution(x, y);
      ASSERT_NEAR(d.alice_plus(), 0.5, 1e-12);
      ASSERT_NEAR(d.bob_plus(), 0.5, 1e-12);
      const double c = std::cos(kPi * (x - y));
      ASSERT_NEAR(d.agree(), c * c, 1e-12);
    }
  }
}

TEST(PureState, Validation) {
  Eigen::VectorXcd v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(PureState(1, v), ValidationError);
  Eigen::VectorXcd w(3);
  w << 1.0, 0.0, 0.0;
  EXPECT_THROW(PureState(1, w), ValidationError);
  EXPECT_NO_THROW(PureState(1, v / std::sqrt(2.0)));
}

TEST(Povm, Validation) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2), b = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 0.9;
  EXPECT_THROW(Povm(1, std::vector<Eigen::MatrixXcd>{a, b}), ValidationError);
  b(1, 1) = 1.0;
  EXPECT_NO_THROW(Povm(1, std::vector<Eigen::MatrixXcd>{a, b}));

  Eigen::MatrixXcd nh = Eigen::MatrixXcd::Identity(2, 2);
  nh(0, 1) = 0.1;
  EXPECT_THROW(PovmElement{nh}, ValidationError);

  Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(2, 2);
  neg(0, 0) = -1e-6;
  EXPECT_THROW(PovmElement{neg}, ValidationError);
  EXPECT_THROW(Povm(1, std::vector<Eigen::MatrixXcd>{}), ValidationError);
}

TEST(Born, ComputationalBasis) {
  const Povm z = Povm::computational(1);
  const auto p0 = born_probabilities(PureState::basis(1, 0), z);
  EXPECT_EQ(p0, (std::vector<double>{1.0, 0.0}));
  Eigen::VectorXcd plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto pp = born_probabilities(PureState(1, plus), z);
  EXPECT_NEAR(pp[0], 0.5, 1e-15);
  EXPECT_NEAR(pp[1], 0.5, 1e-15);
}

TEST(Born, DimensionMismatch) {
  EXPECT_THROW(born_probabilities(PureState::basis(2, 0), Povm::computational(1)), std::invalid_argument);
}

// Independent recomputation with explicit loops over components.
std::vector<double> born_by_loops(const PureState& s, const Povm& povm) {
  std::vector<double> out;
  const std::size_t d = s.dimension();
  for (const auto& e : povm.elements()) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        acc += std::conj(s.amplitude(i)) * e.matrix()(static_cast<long>(i), static_cast<long>(j)) *
               s.amplitude(j);
    out.push_back(acc.real());
  }
  return out;
}

TEST(Born, RandomInstancesMatchLoopOracle) {
  CounterRng rng(2024);
  for (int t = 0; t < 200; ++t) {
    const auto s = random_state(2, rng);
    const auto povm = random_rank1_povm(2, 4, rng);
    const auto fast = born_probabilities(s, povm);
    const auto slow = born_by_loops(s, povm);
    for (std::size_t l = 0; l < fast.size(); ++l) ASSERT_NEAR(fast[l], slow[l], 1e-12);
  }
}

TEST(Born, SumsToOneOnRandomInstances) {
  CounterRng rng(99);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 3;
    const auto s = random_state(n, rng);
    const auto povm = (t % 2 == 0) ? random_rank1_povm(n, (std::size_t{1} << n) + t % 4, rng)
                                   : random_full_rank_povm(n, 2 + t % 3, rng);
    double sum = 0.0;
    for (double p : born_probabilities(s, povm)) {
      ASSERT_GE(p, 0.0);
      ASSERT_LE(p, 1.0);
      sum += p;
    }
    ASSERT_NEAR(sum, 1.0, 1e-10);
  }
}

TEST(Rank1, AlreadyRankOneIsUnchanged) {
  const Povm z = Povm::computational(1);
  const auto r = rank1_decompose(z);
  ASSERT_EQ(r.povm.size(), 2u);
  EXPECT_EQ(r.source, (std::vector<std::size_t>{0, 1}));
  for (std::size_t l = 0; l < 2; ++l) {
    EXPECT_TRUE(r.povm.element(l).matrix().isApprox(z.element(l).matrix(), 1e-15));
  }
}

TEST(Rank1, HalfIdentitySplitsIntoFour) {
  const Eigen::MatrixXcd half = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
  const auto r = rank1_decompose(Povm(1, std::vector<Eigen::MatrixXcd>{half, half}));
  ASSERT_EQ(r.povm.size(), 4u);
  EXPECT_EQ(r.source, (std::vector<std::size_t>{0, 0, 1, 1}));
  for (const auto& e : r.povm.elements()) EXPECT_NEAR(e.trace(), 0.5, 1e-12);
}

TEST(Rank1, CoarseGrainingReproducesFullRankPovm) {
  CounterRng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto povm = random_full_rank_povm(1, 2, rng);
    const auto r = rank1_decompose(povm);
    for (int k = 0; k < 100; ++k) {
      const auto s = random_state(1, rng);
      const auto coarse = r.coarse_grain(born_probabilities(s, r.povm));
      const auto direct = born_probabilities(s, povm);
      for (std::size_t l = 0; l < direct.size(); ++l) ASSERT_NEAR(coarse[l], direct[l], 1e-12);
    }
  }
}

TEST(Rank1, RefinedPovmIsComplete) {
  CounterRng rng(6);
  for (int n = 1; n <= 3; ++n) {
    const auto r = rank1_decompose(random_full_rank_povm(n, 3, rng));
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
    for (const auto& e : r.povm.elements()) sum += e.matrix();
    EXPECT_LT((sum - Eigen::MatrixXcd::Identity(1 << n, 1 << n)).cwiseAbs().maxCoeff(), 1e-9);
    for (std::size_t l = 0; l < r.povm.size(); ++l) {
      // Each refined element equals weight * |dir><dir|.
      const Eigen::MatrixXcd rebuilt = r.weights[l] * r.directions[l] * r.directions[l].adjoint();
      EXPECT_LT((rebuilt - r.povm.element(l).matrix()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

}  // namespace
}  // namespace entsim
