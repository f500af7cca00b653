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

#include "entsim/quantum_core.hpp"
#include "entsim/rng.hpp"

namespace entsim {

/// Standard normal via Box-Muller; consumes two uniforms.
double standard_normal(CounterRng& rng);

/// Haar-random pure state (normalized complex Gaussian vector).
PureState random_state(int qubits, CounterRng& rng);

/// Random rank-1 POVM with `outcomes` >= 2^n elements:
/// v_l = S^{-1/2} w_l for Gaussian w_l and S = sum_l w_l w_l^dagger.
Povm random_rank1_povm(int qubits, std::size_t outcomes, CounterRng& rng);

/// Random POVM whose elements are full rank.
Povm random_full_rank_povm(int qubits, std::size_t outcomes, CounterRng& rng);

}  // namespace entsim
