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

#include <filesystem>
#include <string>

#include "json.hpp"

#include "entsim/quantum_core.hpp"

namespace entsim::io {

// State file:  {"n": int, "amps": [[re, im], ...]}            (2^n entries)
// POVM file:   {"n": int, "elements": [ [[ [re,im], ... ], ... ], ... ]}
//              each element a row-major 2^n x 2^n matrix of [re, im] pairs.
//
// Every parse failure throws ValidationError naming the offending entry and
// the constraint it breaks.

PureState state_from_json(const nlohmann::json& j);
Povm povm_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const PureState& state);
nlohmann::json povm_to_json(const Povm& povm);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

PureState load_state(const std::filesystem::path& path);
Povm load_povm(const std::filesystem::path& path);

}  // namespace entsim::io
