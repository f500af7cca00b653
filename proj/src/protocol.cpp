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

#include "entsim/protocol.hpp"

#include <sstream>

#include "json.hpp"

namespace entsim {

void Transcript::append(Message message) {
  if (message.bits.empty()) throw ProtocolError("messages must carry at least one bit");
  if (message.bits.find_first_not_of("01") != std::string::npos) {
    throw ProtocolError("message payload must be a string over {0,1}");
  }
  if (message.round < 1) throw ProtocolError("round indices start at 1");
  if (!messages_.empty() && message.round < messages_.back().round) {
    throw ProtocolError("round indices must be non-decreasing");
  }
  if (message.direction == Direction::kAliceToBob) {
    forward_bits_ += message.bits.size();
  } else {
    backward_bits_ += message.bits.size();
  }
  messages_.push_back(std::move(message));
}

std::int64_t Transcript::rounds() const noexcept {
  return messages_.empty() ? 0 : messages_.back().round;
}

std::string Transcript::to_json_lines() const {
  std::string out;
  for (const auto& m : messages_) {
    nlohmann::ordered_json j;
    j["dir"] = m.direction == Direction::kAliceToBob ? "AB" : "BA";
    j["bits"] = m.bits;
    j["round"] = m.round;
    out += j.dump();
    out += '\n';
  }
  return out;
}

Transcript Transcript::from_json_lines(std::string_view text) {
  Transcript t;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    const auto dir = j.at("dir").get<std::string>();
    if (dir != "AB" && dir != "BA") throw ProtocolError("transcript dir must be AB or BA");
    t.append(Message{dir == "AB" ? Direction::kAliceToBob : Direction::kBobToAlice,
                     j.at("bits").get<std::string>(), j.at("round").get<std::int64_t>()});
  }
  return t;
}

PartyContext::PartyContext(Role role, std::uint64_t private_seed,
                           std::optional<std::uint64_t> shared_seed, bool shared_allowed)
    : role_(role), private_(private_seed), shared_allowed_(shared_allowed) {
  if (shared_seed) shared_.emplace(*shared_seed);
}

CounterRng& PartyContext::shared_rng() {
  if (!shared_allowed_) {
    throw ProtocolError("protocol is declared free of local hidden variables but read the shared stream");
  }
  if (!shared_) throw ProtocolError("shared randomness requested but no shared seed was configured");
  return *shared_;
}

class Engine {
 public:
  static RunResult run(const Protocol& protocol, const RandomnessConfig& config,
                       const RunOptions& options) {
    const bool lhv = protocol.uses_shared_randomness();
    if (lhv && !config.shared_seed) {
      throw ProtocolError(protocol.name() + " uses shared randomness but no shared seed was given");
    }
    if (!lhv && config.shared_seed) {
      throw ProtocolError(protocol.name() + " is LHV-free; a shared seed must not be supplied");
    }
    PartyContext alice_ctx(Role::kAlice, config.alice_seed, config.shared_seed, lhv);
    PartyContext bob_ctx(Role::kBob, config.bob_seed, config.shared_seed, lhv);
    auto alice = protocol.make_alice();
    auto bob = protocol.make_bob();

    RunResult result;
    std::string last;  // payload of the previous turn, empty after a pass
    int consecutive_passes = 0;
    for (std::int64_t turn = 0;; ++turn) {
      const std::int64_t round = turn / 2 + 1;
      if (round > options.round_cap) {
        throw RoundCapExceeded(protocol.name() + " exceeded the round cap of " +
                               std::to_string(options.round_cap));
      }
      const bool alice_turn = (turn % 2) == 0;
      PartyContext& ctx = alice_turn ? alice_ctx : bob_ctx;
      ctx.round_ = round;
      std::optional<std::string> sent = (alice_turn ? *alice : *bob).act(ctx, last);
      if (!sent) {
        last.clear();
        if (++consecutive_passes == 2) break;
        continue;
      }
      consecutive_passes = 0;
      result.transcript.append(Message{alice_turn ? Direction::kAliceToBob : Direction::kBobToAlice,
                                       *sent, round});
      last = std::move(*sent);
    }
    result.alice_output = alice->output();
    result.bob_output = bob->output();
    return result;
  }
};

RunResult run_protocol(const Protocol& protocol, const RandomnessConfig& config,
                       const RunOptions& options) {
  return Engine::run(protocol, config, options);
}

RunResult Protocol::run(const RandomnessConfig& config, const RunOptions& options) const {
  return run_protocol(*this, config, options);
}

}  // namespace entsim
