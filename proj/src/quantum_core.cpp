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

#include "entsim/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace entsim {
namespace {

std::size_t checked_dimension(int qubits) {
  if (qubits < 0 || qubits > 20) {
    throw ValidationError("qubit count must lie in [0, 20], got " + std::to_string(qubits));
  }
  return std::size_t{1} << qubits;
}

}  // namespace

PureState::PureState(int qubits, Eigen::VectorXcd amplitudes)
    : qubits_(qubits), amps_(std::move(amplitudes)) {
  const std::size_t dim = checked_dimension(qubits);
  if (static_cast<std::size_t>(amps_.size()) != dim) {
    std::ostringstream os;
    os << "state has " << amps_.size() << " amplitudes but 2^n = " << dim;
    throw ValidationError(os.str());
  }
  const double norm2 = amps_.squaredNorm();
  if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
    std::ostringstream os;
    os << "state is not normalized: sum |amp|^2 = " << norm2;
    throw ValidationError(os.str());
  }
}

PureState PureState::basis(int qubits, std::size_t index) {
  const std::size_t dim = checked_dimension(qubits);
  if (index >= dim) throw ValidationError("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(qubits, std::move(v));
}

PovmElement::PovmElement(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw ValidationError("POVM element must be a nonempty square matrix");
  }
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= kHermitianTolerance)) {
    std::ostringstream os;
    os << "POVM element is not Hermitian: max |B - B^dagger| = " << asym;
    throw ValidationError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (!(min_eig >= -kPsdTolerance)) {
    std::ostringstream os;
    os << "POVM element is not positive semidefinite: minimum eigenvalue " << min_eig;
    throw ValidationError(os.str());
  }
  trace_ = matrix_.trace().real();
}

Povm::Povm(int qubits, std::vector<PovmElement> elements)
    : qubits_(qubits), elements_(std::move(elements)) {
  const std::size_t dim = checked_dimension(qubits);
  if (elements_.empty()) throw ValidationError("POVM must have at least one element");
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
  for (std::size_t l = 0; l < elements_.size(); ++l) {
    const auto& m = elements_[l].matrix();
    if (static_cast<std::size_t>(m.rows()) != dim) {
      std::ostringstream os;
      os << "POVM element " << l << " has dimension " << m.rows() << " but 2^n = " << dim;
      throw ValidationError(os.str());
    }
    sum += m;
  }
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(sum.rows(), sum.cols());
  const double err = (sum - identity).cwiseAbs().maxCoeff();
  if (!(err <= kCompletenessTolerance)) {
    std::ostringstream os;
    os << "POVM violates completeness: max |sum_l B_l - I| = " << err;
    throw ValidationError(os.str());
  }
}

namespace {
std::vector<PovmElement> wrap(const std::vector<Eigen::MatrixXcd>& matrices) {
  std::vector<PovmElement> out;
  out.reserve(matrices.size());
  for (const auto& m : matrices) out.emplace_back(m);
  return out;
}
}  // namespace

Povm::Povm(int qubits, const std::vector<Eigen::MatrixXcd>& matrices)
    : Povm(qubits, wrap(matrices)) {}

Povm Povm::computational(int qubits) {
  const std::size_t dim = checked_dimension(qubits);
  std::vector<Eigen::MatrixXcd> ms;
  for (std::size_t j = 0; j < dim; ++j) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1.0;
    ms.push_back(std::move(m));
  }
  return Povm(qubits, ms);
}

Eigen::Matrix2d r_matrix(double x) {
  const double c = std::cos(2.0 * std::numbers::pi * x);
  const double s = std::sin(2.0 * std::numbers::pi * x);
  Eigen::Matrix2d r;
  r << c, s, s, -c;
  return r;
}

std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> r_projectors(double x) {
  const Eigen::Matrix2cd r = r_matrix(x).cast<Complex>();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  return {0.5 * (id + r), 0.5 * (id - r)};
}

double BellDistribution::prob(int a, int b) const {
  const int ia = a > 0 ? 0 : 1;
  const int ib = b > 0 ? 0 : 1;
  return p[static_cast<std::size_t>(2 * ia + ib)];
}

BellDistribution bell_joint_distribution(double x, double y) {
  Eigen::Vector4cd phi = Eigen::Vector4cd::Zero();
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const auto [pa_plus, pa_minus] = r_projectors(x);
  const auto [pb_plus, pb_minus] = r_projectors(y);
  const Eigen::Matrix2cd* pa[2] = {&pa_plus, &pa_minus};
  const Eigen::Matrix2cd* pb[2] = {&pb_plus, &pb_minus};

  BellDistribution out;
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      // (P_a (x) P_b)_{(i,k),(j,l)} = P_a(i,j) P_b(k,l)
      Eigen::Matrix4cd joint;
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l) joint(2 * i + k, 2 * j + l) = (*pa[ia])(i, j) * (*pb[ib])(k, l);
      out.p[static_cast<std::size_t>(2 * ia + ib)] = (phi.adjoint() * joint * phi)(0, 0).real();
    }
  }
  return out;
}

std::vector<double> born_probabilities(const PureState& state, const Povm& povm) {
  if (state.qubits() != povm.qubits()) {
    throw ValidationError("state and POVM act on different qubit counts");
  }
  const auto& psi = state.amplitudes();
  std::vector<double> out;
  out.reserve(povm.size());
  for (const auto& e : povm.elements()) {
    const double p = psi.dot(e.matrix() * psi).real();
    out.push_back(std::clamp(p, 0.0, 1.0));
  }
  return out;
}

std::vector<double> Rank1Refinement::coarse_grain(const std::vector<double>& refined) const {
  if (refined.size() != source.size()) {
    throw std::invalid_argument("coarse_grain: length does not match the refinement");
  }
  std::vector<double> out(original_size, 0.0);
  for (std::size_t i = 0; i < refined.size(); ++i) out[source[i]] += refined[i];
  return out;
}

Rank1Refinement rank1_decompose(const Povm& povm) {
  std::vector<PovmElement> elements;
  std::vector<std::size_t> source;
  std::vector<Eigen::VectorXcd> directions;
  std::vector<double> weights;

  for (std::size_t l = 0; l < povm.size(); ++l) {
    const auto& m = povm.element(l).matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    const auto& evals = solver.eigenvalues();
    const auto& evecs = solver.eigenvectors();
    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = 0; k < evals.size(); ++k) {
      if (evals(k) < -kPsdTolerance) {
        throw ValidationError("rank1_decompose: element " + std::to_string(l) +
                              " is not positive semidefinite");
      }
      if (evals(k) >= kEigenDropTolerance) kept.push_back(k);
    }
    // Largest eigenvalue first; keeps the output order stable.
    std::reverse(kept.begin(), kept.end());
    for (Eigen::Index k : kept) {
      const Eigen::VectorXcd v = evecs.col(k);
      if (kept.size() == 1) {
        elements.emplace_back(m);
      } else {
        Eigen::MatrixXcd proj = evals(k) * (v * v.adjoint());
        proj = 0.5 * (proj + proj.adjoint()).eval();
        elements.emplace_back(std::move(proj));
      }
      source.push_back(l);
      directions.push_back(v);
      weights.push_back(kept.size() == 1 ? m.trace().real() : evals(k));
    }
  }
  return Rank1Refinement{Povm(povm.qubits(), std::move(elements)), std::move(source),
                         std::move(directions), std::move(weights), povm.size()};
}

Povm povm_from_vectors(int qubits, const std::vector<Eigen::VectorXcd>& vectors) {
  std::vector<Eigen::MatrixXcd> ms;
  ms.reserve(vectors.size());
  for (const auto& v : vectors) ms.push_back(v * v.adjoint());
  return Povm(qubits, ms);
}

}  // namespace entsim
