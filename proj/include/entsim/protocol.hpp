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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entsim/rng.hpp"

namespace entsim {

enum class Direction { kAliceToBob, kBobToAlice };

/// One transmitted message. `bits` is a nonempty string over {'0','1'}.
struct Message {
  Direction direction;
  std::string bits;
  std::int64_t round;

  bool operator==(const Message&) const = default;
};

/// Ordered message log with running per-direction bit totals.
class Transcript {
 public:
  /// Rejects empty or non-binary payloads and decreasing round indices.
  void append(Message message);

  const std::vector<Message>& messages() const noexcept { return messages_; }
  std::uint64_t forward_bits() const noexcept { return forward_bits_; }
  std::uint64_t backward_bits() const noexcept { return backward_bits_; }
  std::uint64_t total_bits() const noexcept { return forward_bits_ + backward_bits_; }
  /// Highest round index that carried a message (0 for an empty transcript).
  std::int64_t rounds() const noexcept;

  /// One JSON object per line: {"dir":"AB"|"BA","bits":"0110","round":k}.
  std::string to_json_lines() const;
  static Transcript from_json_lines(std::string_view text);

  bool operator==(const Transcript&) const = default;

 private:
  std::vector<Message> messages_;
  std::uint64_t forward_bits_ = 0;
  std::uint64_t backward_bits_ = 0;
};

/// Seeds for the three randomness sources. An absent shared seed means the
/// run has no local hidden variables.
struct RandomnessConfig {
  std::uint64_t alice_seed = 0;
  std::uint64_t bob_seed = 0;
  std::optional<std::uint64_t> shared_seed;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run exceeded its round cap: treated as a non-termination bug.
class RoundCapExceeded : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

enum class Role { kAlice, kBob };

/// What a party sees while it holds the turn. Each party owns a private
/// stream and, for protocols that declare it, its own reader of the shared
/// stream (both readers replay the same sequence).
class PartyContext {
 public:
  PartyContext(Role role, std::uint64_t private_seed, std::optional<std::uint64_t> shared_seed,
               bool shared_allowed);

  Role role() const noexcept { return role_; }
  CounterRng& private_rng() noexcept { return private_; }
  /// Throws ProtocolError if the protocol declared itself LHV-free.
  CounterRng& shared_rng();
  std::int64_t round() const noexcept { return round_; }

 private:
  friend class Engine;
  Role role_;
  CounterRng private_;
  std::optional<CounterRng> shared_;
  bool shared_allowed_;
  std::int64_t round_ = 1;
};

/// One side of a two-party protocol, run as a state machine. On each turn
/// the party sees the message the other side sent on its previous turn
/// (empty if it passed) and either sends a nonempty bit string or passes
/// (std::nullopt). Whether to pass must be a function of the transcript so
/// far; two consecutive passes end the run.
class Party {
 public:
  virtual ~Party() = default;
  virtual std::optional<std::string> act(PartyContext& ctx, std::string_view incoming) = 0;
  virtual std::int64_t output() const = 0;
};

struct RunOptions {
  std::int64_t round_cap = 1'000'000;
};

struct RunResult {
  std::int64_t alice_output = 0;
  std::int64_t bob_output = 0;
  Transcript transcript;
};

/// Anything the Monte Carlo harness can run: a protocol, or a wrapper that
/// post-processes one.
class Simulation {
 public:
  virtual ~Simulation() = default;
  virtual std::string name() const = 0;
  virtual bool uses_shared_randomness() const = 0;
  virtual RunResult run(const RandomnessConfig& config, const RunOptions& options = {}) const = 0;
};

/// Two-party protocol whose inputs are bound at construction. Alice holds
/// the first turn; round k consists of Alice's k-th turn followed by Bob's.
class Protocol : public Simulation {
 public:
  virtual std::unique_ptr<Party> make_alice() const = 0;
  virtual std::unique_ptr<Party> make_bob() const = 0;

  RunResult run(const RandomnessConfig& config, const RunOptions& options = {}) const override;
};

/// Executes the alternating schedule, enforcing the shared-randomness
/// declaration and the round cap. Deterministic in (protocol, config).
RunResult run_protocol(const Protocol& protocol, const RandomnessConfig& config,
                       const RunOptions& options = {});

}  // namespace entsim
