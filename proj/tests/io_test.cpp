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

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "entsim/io.hpp"
#include "entsim/random_instances.hpp"
#include "entsim/rng.hpp"

namespace entsim {
namespace {

using nlohmann::json;

std::string error_of(const json& j, bool povm) {
  try {
    if (povm) {
      io::povm_from_json(j);
    } else {
      io::state_from_json(j);
    }
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(Io, StateRoundTrip) {
  CounterRng rng(1);
  const auto s = random_state(2, rng);
  const auto back = io::state_from_json(io::state_to_json(s));
  EXPECT_TRUE(back.amplitudes().isApprox(s.amplitudes(), 1e-15));
}

TEST(Io, PovmRoundTrip) {
  CounterRng rng(2);
  const auto p = random_rank1_povm(1, 3, rng);
  const auto back = io::povm_from_json(io::povm_to_json(p));
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t l = 0; l < 3; ++l) {
    EXPECT_TRUE(back.element(l).matrix().isApprox(p.element(l).matrix(), 1e-15));
  }
}

TEST(Io, StateErrorsNameTheConstraint) {
  EXPECT_NE(error_of(json::parse(R"({"amps": [[1,0],[0,0]]})"), false).find("\"n\""), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"n": 1, "amps": [[1,0]]})"), false).find("entries"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"n": 1, "amps": [[1,0],[1,0]]})"), false).find("normalized"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"n": 1, "amps": [[1,0],"x"]})"), false).find("[1]"), std::string::npos);
}

TEST(Io, PovmErrorsNameTheEntry) {
  const auto incomplete = json::parse(R"({"n": 1, "elements": [
      [[[1,0],[0,0]],[[0,0],[0,0]]],
      [[[0,0],[0,0]],[[0,0],[0.9,0]]]]})");
  EXPECT_NE(error_of(incomplete, true).find("completeness"), std::string::npos);

  const auto non_hermitian = json::parse(R"({"n": 1, "elements": [
      [[[1,0],[0.5,0]],[[0,0],[1,0]]]]})");
  const auto msg = error_of(non_hermitian, true);
  EXPECT_NE(msg.find("elements[0]"), std::string::npos) << msg;
  EXPECT_NE(msg.find("Hermitian"), std::string::npos) << msg;

  const auto short_row = json::parse(R"({"n": 1, "elements": [[[[1,0]],[[0,0],[1,0]]]]})");
  EXPECT_NE(error_of(short_row, true).find("row 0"), std::string::npos);
}

TEST(Io, FileHelpers) {
  const auto dir = std::filesystem::temp_directory_path() / "entsim_io_test";
  std::filesystem::create_directories(dir);
  io::write_json_file(dir / "s.json", io::state_to_json(PureState::basis(1, 1)));
  EXPECT_NEAR(std::abs(io::load_state(dir / "s.json").amplitude(1)), 1.0, 1e-15);
  EXPECT_THROW(io::load_state(dir / "missing.json"), ValidationError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace entsim
