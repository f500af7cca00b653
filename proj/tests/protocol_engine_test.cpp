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

#include <memory>
#include <optional>
#include <string>

#include <gtest/gtest.h>

#include "entsim/bell_protocols.hpp"
#include "entsim/monte_carlo.hpp"
#include "entsim/protocol.hpp"

namespace entsim {
namespace {

// Alice sends one private random bit, Bob echoes nothing.
class EchoProtocol final : public Protocol {
 public:
  std::string name() const override { return "echo"; }
  bool uses_shared_randomness() const override { return false; }
  std::unique_ptr<Party> make_alice() const override {
    struct A : Party {
      bool sent = false;
      int b = 0;
      std::optional<std::string> act(PartyContext& ctx, std::string_view) override {
        if (sent) return std::nullopt;
        sent = true;
        b = ctx.private_rng().bit();
        return std::string(1, static_cast<char>('0' + b));
      }
      std::int64_t output() const override { return b; }
    };
    return std::make_unique<A>();
  }
  std::unique_ptr<Party> make_bob() const override {
    struct B : Party {
      int got = -1;
      std::optional<std::string> act(PartyContext&, std::string_view in) override {
        if (!in.empty()) got = in[0] - '0';
        return std::nullopt;
      }
      std::int64_t output() const override { return got; }
    };
    return std::make_unique<B>();
  }
};

// Never stops talking.
class ChatterProtocol final : public Protocol {
 public:
  explicit ChatterProtocol(bool use_shared = false, bool declare_shared = false, bool empty = false)
      : use_shared_(use_shared), declare_shared_(declare_shared), empty_(empty) {}
  std::string name() const override { return "chatter"; }
  bool uses_shared_randomness() const override { return declare_shared_; }
  std::unique_ptr<Party> make_alice() const override { return std::make_unique<P>(use_shared_, empty_); }
  std::unique_ptr<Party> make_bob() const override { return std::make_unique<P>(false, false); }

 private:
  struct P : Party {
    P(bool s, bool e) : shared(s), empty(e) {}
    bool shared, empty;
    std::optional<std::string> act(PartyContext& ctx, std::string_view) override {
      if (shared) ctx.shared_rng()();
      return empty ? std::string() : std::string("1");
    }
    std::int64_t output() const override { return 0; }
  };
  bool use_shared_, declare_shared_, empty_;
};

TEST(Engine, EchoTranscript) {
  const auto r = run_protocol(EchoProtocol{}, RandomnessConfig{1, 2, std::nullopt});
  EXPECT_EQ(r.transcript.forward_bits(), 1u);
  EXPECT_EQ(r.transcript.backward_bits(), 0u);
  EXPECT_EQ(r.transcript.messages().size(), 1u);
  EXPECT_EQ(r.alice_output, r.bob_output);
  EXPECT_EQ(r.transcript.rounds(), 1);
}

TEST(Engine, DeterministicGivenSeeds) {
  RoundsProtocol proto(0.3, 0.7);
  const RandomnessConfig cfg{11, 12, std::nullopt};
  const auto a = run_protocol(proto, cfg);
  const auto b = run_protocol(proto, cfg);
  EXPECT_EQ(a.transcript, b.transcript);
  EXPECT_EQ(a.alice_output, b.alice_output);
  EXPECT_EQ(a.bob_output, b.bob_output);
}

TEST(Engine, RoundsProtocolStructuralMinimum) {
  RoundsProtocol proto(0.3, 0.7);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto r = run_protocol(proto, RandomnessConfig{s, s + 1000, std::nullopt});
    ASSERT_TRUE(r.alice_output == 1 || r.alice_output == -1);
    ASSERT_TRUE(r.bob_output == 1 || r.bob_output == -1);
    ASSERT_GE(r.transcript.forward_bits(), 2u);
    ASSERT_GE(r.transcript.backward_bits(), 1u);
  }
}

TEST(Engine, RoundCapAborts) {
  RunOptions opts;
  opts.round_cap = 50;
  EXPECT_THROW(run_protocol(ChatterProtocol{}, RandomnessConfig{}, opts), RoundCapExceeded);
}

TEST(Engine, SharedRandomnessRules) {
  // LHV-free protocol reading the shared stream.
  EXPECT_THROW(run_protocol(ChatterProtocol(true, false), RandomnessConfig{}), ProtocolError);
  // LHV-free protocol handed a shared seed.
  EXPECT_THROW(run_protocol(EchoProtocol{}, RandomnessConfig{1, 2, 3}), ProtocolError);
  // LHV protocol without a shared seed.
  EXPECT_THROW(run_protocol(SteinerProtocol(0.1, 0.2), RandomnessConfig{1, 2, std::nullopt}), ProtocolError);
}

TEST(Engine, EmptyMessageRejected) {
  EXPECT_THROW(run_protocol(ChatterProtocol(false, false, true), RandomnessConfig{}), ProtocolError);
}

TEST(Transcript, TotalsAndValidation) {
  Transcript t;
  t.append({Direction::kAliceToBob, "0110", 1});
  t.append({Direction::kBobToAlice, "1", 1});
  t.append({Direction::kAliceToBob, "0", 2});
  EXPECT_EQ(t.forward_bits(), 5u);
  EXPECT_EQ(t.backward_bits(), 1u);
  EXPECT_EQ(t.total_bits(), 6u);
  EXPECT_EQ(t.rounds(), 2);
  EXPECT_THROW(t.append({Direction::kAliceToBob, "1", 1}), ProtocolError);
  EXPECT_THROW(t.append({Direction::kAliceToBob, "", 3}), ProtocolError);
  EXPECT_THROW(t.append({Direction::kAliceToBob, "12", 3}), ProtocolError);
}

TEST(Transcript, JsonLinesRoundTrip) {
  Transcript t;
  t.append({Direction::kAliceToBob, "01", 1});
  t.append({Direction::kBobToAlice, "1", 1});
  const std::string text = t.to_json_lines();
  EXPECT_EQ(text, "{\"dir\":\"AB\",\"bits\":\"01\",\"round\":1}\n{\"dir\":\"BA\",\"bits\":\"1\",\"round\":1}\n");
  EXPECT_EQ(Transcript::from_json_lines(text), t);
  EXPECT_THROW(Transcript::from_json_lines("{\"dir\":\"XX\",\"bits\":\"1\",\"round\":1}\n"), ProtocolError);
}

TEST(MonteCarlo, EchoMeanIsExactlyOne) {
  MonteCarloOptions o;
  o.trials = 100;
  o.master_seed = 3;
  const auto st = monte_carlo(EchoProtocol{}, o).stats;
  EXPECT_EQ(st.trials(), 100u);
  EXPECT_EQ(st.mean_forward(), 1.0);
  EXPECT_EQ(st.mean_backward(), 0.0);
  EXPECT_EQ(st.max_forward(), 1u);
}

TEST(MonteCarlo, EqualAnglesAlwaysAgree) {
  MonteCarloOptions o;
  o.trials = 100000;
  o.master_seed = 17;
  o.workers = default_workers();
  const auto st = monte_carlo(RoundsProtocol(0.4, 0.4), o).stats;
  EXPECT_EQ(st.agreement(), 1.0);
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
  MonteCarloOptions o;
  o.trials = 5000;
  o.master_seed = 23;
  o.keep_records = true;
  const auto one = monte_carlo(SteinerProtocol(0.1, 0.35), o);
  o.workers = 4;
  const auto four = monte_carlo(SteinerProtocol(0.1, 0.35), o);
  EXPECT_EQ(one.stats.to_json(), four.stats.to_json());
  ASSERT_EQ(one.records.size(), four.records.size());
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    ASSERT_EQ(one.records[i].alice_output, four.records[i].alice_output);
    ASSERT_EQ(one.records[i].forward_bits, four.records[i].forward_bits);
  }
}

TEST(MonteCarlo, ErrorCarriesTrialIndex) {
  MonteCarloOptions o;
  o.trials = 10;
  o.run.round_cap = 5;
  try {
    monte_carlo(ChatterProtocol{}, o);
    FAIL() << "expected a TrialError";
  } catch (const TrialError& e) {
    EXPECT_EQ(e.trial(), 0u);
  }
}

TEST(MonteCarlo, TotalsEqualSumOfMessageLengths) {
  RoundsProtocol proto(0.05, 0.61);
  for (std::uint64_t t = 0; t < 500; ++t) {
    const auto r = proto.run(trial_randomness(99, t, false));
    std::uint64_t f = 0, b = 0;
    for (const auto& m : r.transcript.messages()) (m.direction == Direction::kAliceToBob ? f : b) += m.bits.size();
    ASSERT_EQ(f, r.transcript.forward_bits());
    ASSERT_EQ(b, r.transcript.backward_bits());
  }
}

}  // namespace
}  // namespace entsim
