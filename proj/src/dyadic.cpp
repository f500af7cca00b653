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

#include "entsim/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace entsim {

DyadicInterval DyadicInterval::from_prefix(std::string_view bits) {
  DyadicInterval d;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("dyadic prefix must contain only '0' and '1'");
    }
    d.refine(c - '0');
  }
  return d;
}

double DyadicInterval::lo() const noexcept {
  return std::ldexp(static_cast<double>(numerator_), -depth_);
}

double DyadicInterval::hi() const noexcept {
  return std::ldexp(static_cast<double>(numerator_ + 1), -depth_);
}

double DyadicInterval::mid() const noexcept {
  return std::ldexp(static_cast<double>(2 * numerator_ + 1), -depth_ - 1);
}

double DyadicInterval::width() const noexcept { return std::ldexp(1.0, -depth_); }

int DyadicInterval::bit(int i) const {
  if (i < 0 || i >= depth_) {
    throw std::out_of_range("dyadic prefix bit index out of range");
  }
  return static_cast<int>((numerator_ >> (depth_ - 1 - i)) & 1U);
}

std::string DyadicInterval::prefix() const {
  std::string s(static_cast<std::size_t>(depth_), '0');
  for (int i = 0; i < depth_; ++i) {
    if (bit(i) != 0) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

void DyadicInterval::refine(int bit) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("dyadic refinement bit must be 0 or 1");
  }
  if (depth_ >= kMaxDepth) {
    throw std::overflow_error("dyadic interval precision exhausted");
  }
  numerator_ = (numerator_ << 1) | static_cast<std::uint64_t>(bit);
  ++depth_;
}

DyadicInterval DyadicInterval::refined(int bit) const {
  DyadicInterval d = *this;
  d.refine(bit);
  return d;
}

std::uint64_t LazyUniform::word(std::size_t i, CounterRng& rng) {
  while (words_.size() <= i) words_.push_back(rng());
  return words_[i];
}

bool LazyUniform::less_than(double c, CounterRng& rng) {
  if (!(c > 0.0)) return false;
  if (c >= 1.0) return true;
  // Walk the binary expansion of c 64 bits at a time; every step is exact.
  double rest = c;
  for (std::size_t i = 0;; ++i) {
    const double scaled = std::ldexp(rest, 64);
    const double whole = std::floor(scaled);
    const auto c_word = static_cast<std::uint64_t>(whole);
    rest = scaled - whole;
    const std::uint64_t r_word = word(i, rng);
    if (r_word != c_word) return r_word < c_word;
    // Expansion of c exhausted with all bits equal: r >= c.
    if (rest == 0.0) return false;
  }
}

}  // namespace entsim
