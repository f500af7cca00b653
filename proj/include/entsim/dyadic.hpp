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
#include <string>
#include <string_view>

#include "entsim/rng.hpp"

namespace entsim {

/// The half-open interval [a 2^-t, (a+1) 2^-t) of reals whose binary
/// expansion starts with the t-bit prefix a. Refinement only appends bits,
/// so successive intervals nest.
class DyadicInterval {
 public:
  /// Endpoints and midpoints stay exactly representable in a double up to
  /// this depth.
  static constexpr int kMaxDepth = 52;

  DyadicInterval() = default;
  static DyadicInterval from_prefix(std::string_view bits);

  int depth() const noexcept { return depth_; }
  std::uint64_t numerator() const noexcept { return numerator_; }

  double lo() const noexcept;
  double hi() const noexcept;
  double mid() const noexcept;
  double width() const noexcept;

  /// Bit at position `i` (0 = most significant) of the prefix.
  int bit(int i) const;
  std::string prefix() const;

  void refine(int bit);
  DyadicInterval refined(int bit) const;

  bool operator==(const DyadicInterval&) const = default;

 private:
  std::uint64_t numerator_ = 0;
  int depth_ = 0;
};

/// A uniform real on [0,1) whose bits are drawn only when a comparison needs
/// them. Comparisons against any double are therefore exact: a tie at the
/// current precision extends the expansion instead of rounding.
class LazyUniform {
 public:
  /// True iff the sampled real is strictly below `c`.
  bool less_than(double c, CounterRng& rng);

  std::size_t bits_drawn() const noexcept { return words_.size() * 64; }

 private:
  std::uint64_t word(std::size_t i, CounterRng& rng);

  std::basic_string<std::uint64_t> words_;
};

}  // namespace entsim
