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
#include <memory>
#include <string>
#include <vector>

#include "entsim/bell_protocols.hpp"
#include "entsim/protocol.hpp"

namespace entsim {

/// Pr[b = 1] when Alice sends cos(pi x/2^n)|0> + sin(pi x/2^n)|1> and Bob
/// measures R(y/2^n), b = 1 being the -1 eigenvalue. Equals
/// sin^2(pi (x - y) / 2^n); zero exactly when x == y.
double quantum_ne_probability(int n, std::uint64_t x, std::uint64_t y);

/// Nondeterministic NOT-EQUAL from a Bell simulation: run the protocol on
/// angles x/2^n and y/2^n, then Alice sends her output (one extra bit) and
/// Bob outputs a XOR b as 0/1. The bit is 1 with probability
/// sin^2(pi (x - y) / 2^n).
class NotEqualWrapper final : public Simulation {
 public:
  NotEqualWrapper(std::shared_ptr<const Protocol> inner, int n, std::uint64_t x, std::uint64_t y);
  NotEqualWrapper(BellProtocolKind kind, int n, std::uint64_t x, std::uint64_t y);

  std::string name() const override { return "ne-" + inner_->name(); }
  bool uses_shared_randomness() const override { return inner_->uses_shared_randomness(); }
  /// bob_output is the NE bit; alice_output echoes her Bell output.
  RunResult run(const RandomnessConfig& config, const RunOptions& options = {}) const override;

 private:
  std::shared_ptr<const Protocol> inner_;
};

/// Convenience: one wrapped run, returning the NE bit.
int theorem3_wrapper(const NotEqualWrapper& wrapper, const RandomnessConfig& config);

/// A 1-rectangle of the NE matrix: rows and columns as bitmasks over the
/// 2^n inputs.
struct Rectangle {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  bool operator==(const Rectangle&) const = default;
};

struct RectangleCover {
  int n = 0;
  std::vector<Rectangle> rectangles;
};

/// Every rectangle avoids the diagonal and together they cover all (x, y)
/// with x != y.
bool is_valid_ne_cover(const RectangleCover& cover);

/// Exact minimum 1-cover of the 2^n x 2^n NOT-EQUAL matrix by
/// branch-and-bound over maximal rectangles (S, complement of S).
/// Supports n <= 3.
RectangleCover min_rectangle_cover(int n);

}  // namespace entsim
