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

#include "entsim/io.hpp"

#include <fstream>
#include <sstream>

namespace entsim::io {
namespace {

using nlohmann::json;

int read_qubits(const json& j, const char* what) {
  if (!j.is_object()) throw ValidationError(std::string(what) + " file must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ValidationError(std::string(what) + ": field \"n\" must be an integer");
  }
  const int n = j["n"].get<int>();
  if (n < 0 || n > 12) {
    throw ValidationError(std::string(what) + ": \"n\" must lie in [0, 12]");
  }
  return n;
}

Complex read_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(where + ": expected a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

}  // namespace

PureState state_from_json(const json& j) {
  const int n = read_qubits(j, "state");
  const std::size_t dim = std::size_t{1} << n;
  if (!j.contains("amps") || !j["amps"].is_array()) {
    throw ValidationError("state: field \"amps\" must be an array");
  }
  const auto& amps = j["amps"];
  if (amps.size() != dim) {
    std::ostringstream os;
    os << "state: \"amps\" has " << amps.size() << " entries, expected 2^n = " << dim;
    throw ValidationError(os.str());
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    v(static_cast<Eigen::Index>(i)) = read_complex(amps[i], "state amps[" + std::to_string(i) + "]");
  }
  return PureState(n, std::move(v));
}

Povm povm_from_json(const json& j) {
  const int n = read_qubits(j, "POVM");
  const std::size_t dim = std::size_t{1} << n;
  if (!j.contains("elements") || !j["elements"].is_array() || j["elements"].empty()) {
    throw ValidationError("POVM: field \"elements\" must be a nonempty array");
  }
  std::vector<PovmElement> elements;
  const auto& es = j["elements"];
  for (std::size_t l = 0; l < es.size(); ++l) {
    const std::string where = "POVM elements[" + std::to_string(l) + "]";
    const auto& rows = es[l];
    if (!rows.is_array() || rows.size() != dim) {
      throw ValidationError(where + ": expected " + std::to_string(dim) + " rows");
    }
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
      if (!rows[r].is_array() || rows[r].size() != dim) {
        throw ValidationError(where + " row " + std::to_string(r) + ": expected " +
                              std::to_string(dim) + " entries");
      }
      for (std::size_t c = 0; c < dim; ++c) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = read_complex(
            rows[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
      }
    }
    try {
      elements.emplace_back(std::move(m));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return Povm(n, std::move(elements));
}

json state_to_json(const PureState& state) {
  json amps = json::array();
  for (std::size_t i = 0; i < state.dimension(); ++i) amps.push_back(complex_to_json(state.amplitude(i)));
  return json{{"n", state.qubits()}, {"amps", std::move(amps)}};
}

json povm_to_json(const Povm& povm) {
  json elements = json::array();
  for (const auto& e : povm.elements()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < e.matrix().rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < e.matrix().cols(); ++c) row.push_back(complex_to_json(e.matrix()(r, c)));
      rows.push_back(std::move(row));
    }
    elements.push_back(std::move(rows));
  }
  return json{{"n", povm.qubits()}, {"elements", std::move(elements)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": malformed JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

PureState load_state(const std::filesystem::path& path) { return state_from_json(read_json_file(path)); }
Povm load_povm(const std::filesystem::path& path) { return povm_from_json(read_json_file(path)); }

}  // namespace entsim::io
