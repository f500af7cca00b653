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

#include "entsim/random_instances.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace entsim {
namespace {

Eigen::VectorXcd gaussian_vector(Eigen::Index dim, CounterRng& rng) {
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

Eigen::MatrixXcd inverse_sqrt(const Eigen::MatrixXcd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(s);
  const Eigen::VectorXd inv = solver.eigenvalues().cwiseSqrt().cwiseInverse();
  return solver.eigenvectors() * inv.asDiagonal() * solver.eigenvectors().adjoint();
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

double standard_normal(CounterRng& rng) {
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

PureState random_state(int qubits, CounterRng& rng) {
  Eigen::VectorXcd v = gaussian_vector(Eigen::Index{1} << qubits, rng);
  v.normalize();
  return PureState(qubits, std::move(v));
}

Povm random_rank1_povm(int qubits, std::size_t outcomes, CounterRng& rng) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  if (outcomes < static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("a rank-1 POVM needs at least 2^n outcomes");
  }
  std::vector<Eigen::VectorXcd> ws;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t l = 0; l < outcomes; ++l) {
    ws.push_back(gaussian_vector(dim, rng));
    s += ws.back() * ws.back().adjoint();
  }
  const Eigen::MatrixXcd t = inverse_sqrt(hermitian_part(s));
  std::vector<Eigen::MatrixXcd> ms;
  for (const auto& w : ws) {
    const Eigen::VectorXcd v = t * w;
    ms.push_back(hermitian_part(v * v.adjoint()));
  }
  return Povm(qubits, ms);
}

Povm random_full_rank_povm(int qubits, std::size_t outcomes, CounterRng& rng) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  std::vector<Eigen::MatrixXcd> as;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t l = 0; l < outcomes; ++l) {
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) g.col(c) = gaussian_vector(dim, rng);
    as.push_back(hermitian_part(g * g.adjoint()));
    s += as.back();
  }
  const Eigen::MatrixXcd t = inverse_sqrt(hermitian_part(s));
  std::vector<Eigen::MatrixXcd> ms;
  for (const auto& a : as) ms.push_back(hermitian_part(t * a * t));
  return Povm(qubits, ms);
}

}  // namespace entsim
