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

#include "entsim/bell_protocols.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "entsim/lazy_sampler.hpp"

namespace entsim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_angle(double v, const char* name) {
  if (!(v >= 0.0 && v < 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1)");
  }
}

class SteinerAlice final : public Party {
 public:
  SteinerAlice(double x, IndexCode code) : x_(x), code_(code) {}

  std::optional<std::string> act(PartyContext& ctx, std::string_view) override {
    if (sent_) return std::nullopt;
    std::uint64_t k = 0;
    double theta = 0.0;
    for (;;) {
      ++k;
      theta = ctx.shared_rng().uniform();
      const double u = ctx.private_rng().uniform();
      if (u <= std::abs(std::cos(kTwoPi * (theta - x_)))) break;
    }
    output_ = cos_sign(theta - x_);
    sent_ = true;
    return encode_index(k, code_);
  }

  std::int64_t output() const override { return output_; }

 private:
  double x_;
  IndexCode code_;
  bool sent_ = false;
  int output_ = 0;
};

class SteinerBob final : public Party {
 public:
  SteinerBob(double y, IndexCode code) : y_(y), code_(code) {}

  std::optional<std::string> act(PartyContext& ctx, std::string_view incoming) override {
    if (!incoming.empty()) {
      const std::uint64_t k = decode_index(incoming, code_);
      double theta = 0.0;
      for (std::uint64_t i = 0; i < k; ++i) theta = ctx.shared_rng().uniform();
      output_ = cos_sign(theta - y_);
    }
    return std::nullopt;
  }

  std::int64_t output() const override { return output_; }

 private:
  double y_;
  IndexCode code_;
  int output_ = 0;
};

class RoundsAlice final : public Party {
 public:
  explicit RoundsAlice(double x) : x_(x), density_(x) {}

  std::optional<std::string> act(PartyContext& ctx, std::string_view incoming) override {
    if (finished_) return std::nullopt;
    if (sent_ == 0) return reveal(ctx, 2);
    if (incoming == "0") return reveal(ctx, 1);
    if (incoming == "1") {
      // Bob is done; settle our own sign privately, at no communication cost.
      while (sign_resolution_check(theta_, x_) == SignResolution::kNeedMore) {
        theta_.refine(lazy_sample_density(density_, theta_, ctx.private_rng()));
      }
      output_ = sign_resolution_check(theta_, x_) == SignResolution::kPositive ? 1 : -1;
      finished_ = true;
      return std::nullopt;
    }
    throw ProtocolError("rounds protocol: unexpected reply from Bob");
  }

  std::int64_t output() const override { return output_; }

 private:
  std::string reveal(PartyContext& ctx, int count) {
    std::string bits;
    for (int i = 0; i < count; ++i, ++sent_) {
      if (theta_.depth() <= sent_) {
        theta_.refine(lazy_sample_density(density_, theta_, ctx.private_rng()));
      }
      bits.push_back(static_cast<char>('0' + theta_.bit(sent_)));
    }
    return bits;
  }

  double x_;
  ShiftedCosineDensity density_;
  DyadicInterval theta_;  // may run ahead of what Bob has seen
  int sent_ = 0;
  bool finished_ = false;
  int output_ = 0;
};

class RoundsBob final : public Party {
 public:
  explicit RoundsBob(double y) : y_(y) {}

  std::optional<std::string> act(PartyContext&, std::string_view incoming) override {
    if (incoming.empty()) return std::nullopt;
    for (char c : incoming) revealed_.refine(c - '0');
    if (revealed_.depth() < 2) throw ProtocolError("rounds protocol: first message must carry two bits");
    const SignResolution s = sign_resolution_check(revealed_, y_);
    if (s == SignResolution::kNeedMore) return std::string("0");
    output_ = s == SignResolution::kPositive ? 1 : -1;
    return std::string("1");
  }

  std::int64_t output() const override { return output_; }

 private:
  double y_;
  DyadicInterval revealed_;
  int output_ = 0;
};

}  // namespace

std::string encode_index(std::uint64_t k, IndexCode code) {
  if (k == 0) throw std::invalid_argument("index must be positive");
  if (code == IndexCode::kUnary) {
    std::string s(k - 1, '0');
    s.push_back('1');
    return s;
  }
  const int width = std::bit_width(k);
  std::string s(static_cast<std::size_t>(width - 1), '0');
  for (int i = width - 1; i >= 0; --i) s.push_back(((k >> i) & 1U) != 0 ? '1' : '0');
  return s;
}

std::uint64_t decode_index(std::string_view bits, IndexCode code) {
  if (bits.empty()) throw ProtocolError("empty index code word");
  if (code == IndexCode::kUnary) {
    if (bits.back() != '1' || bits.find('1') != bits.size() - 1) {
      throw ProtocolError("malformed unary code word");
    }
    return bits.size();
  }
  const std::size_t zeros = bits.find('1');
  if (zeros == std::string_view::npos || bits.size() != 2 * zeros + 1 || zeros >= 64) {
    throw ProtocolError("malformed Elias-gamma code word");
  }
  std::uint64_t k = 0;
  for (std::size_t i = zeros; i < bits.size(); ++i) k = (k << 1) | static_cast<std::uint64_t>(bits[i] - '0');
  return k;
}

int cos_sign(double phase) { return std::cos(kTwoPi * phase) >= 0.0 ? 1 : -1; }

SignResolution sign_resolution_check(const DyadicInterval& interval, double y) {
  if (interval.width() > 0.25) {
    throw std::invalid_argument("sign_resolution_check: interval wider than 1/4");
  }
  const double lo = interval.lo();
  const double hi = interval.hi();
  // theta is a.s. interior to its dyadic cell, so only sign changes
  // y + 1/4 + k/2 strictly inside (lo, hi) leave the sign ambiguous:
  // that happens iff floor(2d) + 1 < 2(d + w).
  const double d = lo - y - 0.25;
  const double next = std::floor(2.0 * d) + 1.0;
  if (next < 2.0 * (hi - y - 0.25)) return SignResolution::kNeedMore;
  return cos_sign(interval.mid() - y) > 0 ? SignResolution::kPositive : SignResolution::kNegative;
}

SteinerProtocol::SteinerProtocol(double x, double y, IndexCode code) : x_(x), y_(y), code_(code) {
  check_angle(x, "x");
  check_angle(y, "y");
}

std::unique_ptr<Party> SteinerProtocol::make_alice() const {
  return std::make_unique<SteinerAlice>(x_, code_);
}

std::unique_ptr<Party> SteinerProtocol::make_bob() const {
  return std::make_unique<SteinerBob>(y_, code_);
}

RoundsProtocol::RoundsProtocol(double x, double y) : x_(x), y_(y) {
  check_angle(x, "x");
  check_angle(y, "y");
}

std::unique_ptr<Party> RoundsProtocol::make_alice() const { return std::make_unique<RoundsAlice>(x_); }
std::unique_ptr<Party> RoundsProtocol::make_bob() const { return std::make_unique<RoundsBob>(y_); }

BellProtocolKind parse_bell_protocol(std::string_view name) {
  if (name == "steiner") return BellProtocolKind::kSteiner;
  if (name == "rounds") return BellProtocolKind::kRounds;
  throw std::invalid_argument("unknown Bell protocol '" + std::string(name) + "'");
}

std::shared_ptr<const Protocol> make_bell_protocol(BellProtocolKind kind, double x, double y,
                                                   IndexCode code) {
  if (kind == BellProtocolKind::kSteiner) return std::make_shared<SteinerProtocol>(x, y, code);
  return std::make_shared<RoundsProtocol>(x, y);
}

}  // namespace entsim
