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
#include <string_view>

#include "entsim/dyadic.hpp"
#include "entsim/protocol.hpp"

namespace entsim {

/// Prefix-free codes for a positive integer index.
enum class IndexCode { kUnary, kEliasGamma };

/// kUnary: k-1 zeros then a one (k bits). kEliasGamma: floor(log2 k) zeros
/// followed by k in binary.
std::string encode_index(std::uint64_t k, IndexCode code);
std::uint64_t decode_index(std::string_view bits, IndexCode code);

/// sign(cos(2 pi phase)), with sign(0) taken as +1.
int cos_sign(double phase);

enum class SignResolution { kPositive, kNegative, kNeedMore };

/// Decides sign(cos(2 pi (theta - y))) for every theta strictly inside
/// `interval`, or reports that a sign change y + 1/4 + k/2 lies strictly
/// inside it. A sign change on an endpoint does not block resolution: a
/// lazily sampled theta hits a given endpoint with probability zero.
/// Requires interval.width() <= 1/4.
SignResolution sign_resolution_check(const DyadicInterval& interval, double y);

/// Steiner's protocol: uses shared uniforms theta_1, theta_2, ... and Alice's
/// private uniforms u_k. Alice sends the first k with
/// u_k <= |cos(2 pi (theta_k - x))|; both output the sign of the cosine at
/// their own angle.
class SteinerProtocol final : public Protocol {
 public:
  SteinerProtocol(double x, double y, IndexCode code = IndexCode::kUnary);

  std::string name() const override { return "steiner"; }
  bool uses_shared_randomness() const override { return true; }
  std::unique_ptr<Party> make_alice() const override;
  std::unique_ptr<Party> make_bob() const override;

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  IndexCode code() const noexcept { return code_; }

 private:
  double x_, y_;
  IndexCode code_;
};

/// Hidden-variable-free protocol. Alice draws theta from
/// (pi/2)|cos(2 pi (theta - x))| one binary digit at a time. Round 1: two
/// digits to Bob, one reply bit. Later rounds: one digit, one reply bit.
/// Bob replies "1" once the revealed interval fixes
/// sign(cos(2 pi (theta - y))), "0" otherwise.
class RoundsProtocol final : public Protocol {
 public:
  RoundsProtocol(double x, double y);

  std::string name() const override { return "rounds"; }
  bool uses_shared_randomness() const override { return false; }
  std::unique_ptr<Party> make_alice() const override;
  std::unique_ptr<Party> make_bob() const override;

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  double x_, y_;
};

enum class BellProtocolKind { kSteiner, kRounds };

BellProtocolKind parse_bell_protocol(std::string_view name);

std::shared_ptr<const Protocol> make_bell_protocol(BellProtocolKind kind, double x, double y,
                                                   IndexCode code = IndexCode::kUnary);

}  // namespace entsim
