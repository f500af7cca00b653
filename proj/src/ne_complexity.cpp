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

#include "entsim/ne_complexity.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entsim {

double quantum_ne_probability(int n, std::uint64_t x, std::uint64_t y) {
  if (n < 1 || n > 62) throw std::invalid_argument("n must lie in [1, 62]");
  const std::uint64_t size = std::uint64_t{1} << n;
  if (x >= size || y >= size) throw std::invalid_argument("inputs must be n-bit integers");
  const double scale = std::numbers::pi / static_cast<double>(size);
  const double ax = scale * static_cast<double>(x);
  const double ay = scale * static_cast<double>(y);
  // State (cos ax, sin ax); the -1 eigenvector of R(y/2^n) is (-sin ay, cos ay).
  const double amplitude = -std::sin(ay) * std::cos(ax) + std::cos(ay) * std::sin(ax);
  return amplitude * amplitude;
}

NotEqualWrapper::NotEqualWrapper(std::shared_ptr<const Protocol> inner, int, std::uint64_t,
                                 std::uint64_t)
    : inner_(std::move(inner)) {
  if (!inner_) throw std::invalid_argument("wrapper needs a protocol");
}

namespace {
double ne_angle(int n, std::uint64_t v) {
  if (n < 1 || n > 52) throw std::invalid_argument("n must lie in [1, 52]");
  if (v >= (std::uint64_t{1} << n)) throw std::invalid_argument("inputs must be n-bit integers");
  return std::ldexp(static_cast<double>(v), -n);
}
}  // namespace

NotEqualWrapper::NotEqualWrapper(BellProtocolKind kind, int n, std::uint64_t x, std::uint64_t y)
    : inner_(make_bell_protocol(kind, ne_angle(n, x), ne_angle(n, y))) {}

RunResult NotEqualWrapper::run(const RandomnessConfig& config, const RunOptions& options) const {
  RunResult r = inner_->run(config, options);
  const std::int64_t next_round = r.transcript.rounds() + 1;
  if (next_round > options.round_cap) throw RoundCapExceeded("wrapper exceeded the round cap");
  r.transcript.append(Message{Direction::kAliceToBob, r.alice_output > 0 ? "0" : "1", next_round});
  r.bob_output = r.alice_output != r.bob_output ? 1 : 0;
  return r;
}

int theorem3_wrapper(const NotEqualWrapper& wrapper, const RandomnessConfig& config) {
  return static_cast<int>(wrapper.run(config).bob_output);
}

bool is_valid_ne_cover(const RectangleCover& cover) {
  if (cover.n < 1 || cover.n > 5) return false;
  const std::uint32_t size = 1U << cover.n;
  const std::uint32_t full = size == 32 ? 0xffffffffU : (1U << size) - 1U;
  std::vector<std::uint32_t> covered(size, 0);
  for (const auto& r : cover.rectangles) {
    if (r.rows == 0 || r.cols == 0) return false;
    if ((r.rows & ~full) != 0 || (r.cols & ~full) != 0) return false;
    if ((r.rows & r.cols) != 0) return false;  // would contain a diagonal cell
    for (std::uint32_t x = 0; x < size; ++x) {
      if ((r.rows >> x) & 1U) covered[x] |= r.cols;
    }
  }
  for (std::uint32_t x = 0; x < size; ++x) {
    if (covered[x] != (full & ~(1U << x))) return false;
  }
  return true;
}

namespace {

// Cells are bits x * size + y of a 64-bit mask (size <= 8).
class CoverSearch {
 public:
  explicit CoverSearch(int n) : size_(1U << n) {
    const std::uint32_t full = (1U << size_) - 1U;
    for (std::uint32_t s = 1; s < full; ++s) {
      rects_.push_back({s, full & ~s});
      masks_.push_back(cells(rects_.back()));
    }
    for (std::uint32_t x = 0; x < size_; ++x)
      for (std::uint32_t y = 0; y < size_; ++y)
        if (x != y) target_ |= bit(x, y);
    max_area_ = 0;
    for (auto m : masks_) max_area_ = std::max(max_area_, std::popcount(m));
  }

  std::vector<Rectangle> solve() {
    for (int limit = 1;; ++limit) {
      chosen_.clear();
      if (dfs(0, limit)) {
        std::vector<Rectangle> out;
        for (auto i : chosen_) out.push_back(rects_[i]);
        return out;
      }
    }
  }

 private:
  std::uint64_t bit(std::uint32_t x, std::uint32_t y) const {
    return std::uint64_t{1} << (x * size_ + y);
  }

  std::uint64_t cells(const Rectangle& r) const {
    std::uint64_t m = 0;
    for (std::uint32_t x = 0; x < size_; ++x)
      for (std::uint32_t y = 0; y < size_; ++y)
        if (((r.rows >> x) & 1U) && ((r.cols >> y) & 1U)) m |= bit(x, y);
    return m;
  }

  bool dfs(std::uint64_t covered, int remaining) {
    const std::uint64_t open = target_ & ~covered;
    if (open == 0) return true;
    if (remaining == 0) return false;
    // Area bound: each further rectangle covers at most max_area_ cells.
    if (std::popcount(open) > remaining * max_area_) return false;
    // Branch on the lowest uncovered cell; some chosen rectangle must hold it.
    const int cell = std::countr_zero(open);
    const std::uint64_t need = std::uint64_t{1} << cell;
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      if ((masks_[i] & need) == 0) continue;
      chosen_.push_back(i);
      if (dfs(covered | masks_[i], remaining - 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::uint32_t size_;
  std::vector<Rectangle> rects_;
  std::vector<std::uint64_t> masks_;
  std::uint64_t target_ = 0;
  int max_area_ = 0;
  std::vector<std::size_t> chosen_;
};

}  // namespace

RectangleCover min_rectangle_cover(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("min_rectangle_cover supports 1 <= n <= 3");
  RectangleCover cover;
  cover.n = n;
  cover.rectangles = CoverSearch(n).solve();
  return cover;
}

}  // namespace entsim
