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
#include <vector>

#include "json.hpp"

namespace entsim {

/// One row of the reproduction table.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool applicable = true;  // false for rows that are documentation only
  bool passed = false;
  std::string reference;   // published or derived figure being checked
  std::string measured;    // what this run observed
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
};

struct AcceptanceOptions {
  bool quick = false;  // 1e4 trials per experiment and 5 sigma instead of 3
  unsigned workers = 1;
  std::uint64_t seed = 20260415;
};

inline constexpr int kCriterionCount = 10;

/// Runs one criterion (1..10).
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// Runs the listed criteria, or all of them when `ids` is empty.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::vector<int>& ids = {});

nlohmann::ordered_json to_json(const CriterionResult& r);

/// Fixed-width text table, one row per criterion.
std::string format_table(const std::vector<CriterionResult>& rows);

}  // namespace entsim
