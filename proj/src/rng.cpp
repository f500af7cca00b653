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

#include "entsim/rng.hpp"

namespace entsim {
namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}  // namespace

std::uint64_t CounterRng::mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CounterRng::result_type CounterRng::operator()() noexcept {
  ++counter_;
  return mix(seed_ + counter_ * kGamma);
}

double CounterRng::uniform() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

int CounterRng::bit() noexcept {
  if (bits_left_ == 0) {
    bit_buffer_ = (*this)();
    bits_left_ = 64;
  }
  const int b = static_cast<int>(bit_buffer_ >> 63);
  bit_buffer_ <<= 1;
  --bits_left_;
  return b;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return CounterRng::mix(CounterRng::mix(master) ^ (index * kGamma + 0x2545f4914f6cdd1dULL));
}

}  // namespace entsim
