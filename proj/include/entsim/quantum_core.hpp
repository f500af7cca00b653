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
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace entsim {

using Complex = std::complex<double>;

/// Raised for any input that breaks a documented invariant (normalization,
/// Hermiticity, completeness, dimensions). The message names the violated
/// constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kCompletenessTolerance = 1e-10;
inline constexpr double kEigenDropTolerance = 1e-12;

/// Normalized pure state of n qubits. amplitude(j) = X(j) + i Y(j).
class PureState {
 public:
  PureState(int qubits, Eigen::VectorXcd amplitudes);

  /// Computational basis state |index>.
  static PureState basis(int qubits, std::size_t index);

  int qubits() const noexcept { return qubits_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  Complex amplitude(std::size_t j) const { return amps_(static_cast<Eigen::Index>(j)); }

 private:
  int qubits_;
  Eigen::VectorXcd amps_;
};

class PovmElement {
 public:
  explicit PovmElement(Eigen::MatrixXcd matrix);

  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  double trace() const noexcept { return trace_; }

 private:
  Eigen::MatrixXcd matrix_;
  double trace_;
};

class Povm {
 public:
  Povm(int qubits, std::vector<PovmElement> elements);
  Povm(int qubits, const std::vector<Eigen::MatrixXcd>& matrices);

  /// Projective measurement onto the computational basis.
  static Povm computational(int qubits);

  int qubits() const noexcept { return qubits_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << qubits_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const PovmElement& element(std::size_t l) const { return elements_.at(l); }
  const std::vector<PovmElement>& elements() const noexcept { return elements_; }

 private:
  int qubits_;
  std::vector<PovmElement> elements_;
};

/// Planar ±1 observable R(x) for x a fraction of a full turn.
Eigen::Matrix2d r_matrix(double x);

/// Projectors onto the +1 and -1 eigenspaces of R(x).
std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> r_projectors(double x);

/// Joint distribution of (a, b) when Alice measures R(x) and Bob R(y) on
/// (|00> + |11>)/sqrt(2). Indexing: [0] = (+1,+1), [1] = (+1,-1),
/// [2] = (-1,+1), [3] = (-1,-1).
struct BellDistribution {
  std::array<double, 4> p{};

  double prob(int a, int b) const;
  double agree() const { return p[0] + p[3]; }
  double alice_plus() const { return p[0] + p[1]; }
  double bob_plus() const { return p[0] + p[2]; }
};

BellDistribution bell_joint_distribution(double x, double y);

/// <psi|B_l|psi> for every element, clamped to [0,1].
std::vector<double> born_probabilities(const PureState& state, const Povm& povm);

/// Rank-1 refinement of a POVM: element i of `povm` equals
/// weights[i] |directions[i]><directions[i]| and came from source[i].
struct Rank1Refinement {
  Povm povm;
  std::vector<std::size_t> source;
  std::vector<Eigen::VectorXcd> directions;
  std::vector<double> weights;

  std::size_t original_size = 0;

  /// Sum refined outcome probabilities back onto the original labels.
  std::vector<double> coarse_grain(const std::vector<double>& refined) const;
};

Rank1Refinement rank1_decompose(const Povm& povm);

/// Rank-1 POVM with the given unnormalized vectors v_l, B_l = v_l v_l^dagger.
Povm povm_from_vectors(int qubits, const std::vector<Eigen::VectorXcd>& vectors);

}  // namespace entsim
