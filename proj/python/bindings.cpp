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

// Python bindings. Reports cross the boundary as JSON text and are decoded
// by the package's __init__.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "entsim/acceptance.hpp"
#include "entsim/bell_protocols.hpp"
#include "entsim/info_bounds.hpp"
#include "entsim/monte_carlo.hpp"
#include "entsim/ne_complexity.hpp"
#include "entsim/quantum_core.hpp"
#include "entsim/teleport.hpp"

namespace py = pybind11;
using namespace entsim;

namespace {

MonteCarloOptions options(std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  MonteCarloOptions o;
  o.trials = trials;
  o.master_seed = seed;
  o.workers = workers == 0 ? default_workers() : workers;
  return o;
}

Povm make_povm(int n, const std::vector<Eigen::MatrixXcd>& elements) { return Povm(n, elements); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Classical simulation of entanglement with bit-level communication accounting";
  m.attr("__version__") = ENTSIM_VERSION;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  m.def("r_matrix", &r_matrix, py::arg("x"));
  m.def("bell_joint_distribution",
        [](double x, double y) { return bell_joint_distribution(x, y).p; }, py::arg("x"), py::arg("y"),
        "Probabilities of (+,+), (+,-), (-,+), (-,-).");
  m.def("born_probabilities",
        [](int n, const Eigen::VectorXcd& amps, const std::vector<Eigen::MatrixXcd>& povm) {
          return born_probabilities(PureState(n, amps), make_povm(n, povm));
        },
        py::arg("n"), py::arg("amplitudes"), py::arg("povm"));

  m.def("simulate_bell_json",
        [](const std::string& protocol, double x, double y, std::uint64_t trials, std::uint64_t seed,
           const std::string& k_code, unsigned workers) {
          const IndexCode code = k_code == "gamma" ? IndexCode::kEliasGamma : IndexCode::kUnary;
          auto proto = make_bell_protocol(parse_bell_protocol(protocol), x, y, code);
          py::gil_scoped_release release;
          return monte_carlo(*proto, options(trials, seed, workers)).stats.to_json().dump();
        },
        py::arg("protocol"), py::arg("x"), py::arg("y"), py::arg("trials"), py::arg("seed"),
        py::arg("k_code") = "unary", py::arg("workers") = 0);

  m.def("simulate_teleport_json",
        [](int n, const Eigen::VectorXcd& amps, const std::vector<Eigen::MatrixXcd>& povm,
           std::uint64_t trials, std::uint64_t seed, unsigned workers) {
          TeleportProtocol proto(PureState(n, amps), make_povm(n, povm));
          py::gil_scoped_release release;
          return monte_carlo(proto, options(trials, seed, workers)).stats.to_json().dump();
        },
        py::arg("n"), py::arg("amplitudes"), py::arg("povm"), py::arg("trials"), py::arg("seed"),
        py::arg("workers") = 0);

  m.def("alpha_bound", &alpha_bound, py::arg("n"), py::arg("m"));
  m.def("round_payload_bits", &round_payload_bits, py::arg("n"), py::arg("round"));

  m.def("mi_given_r", &mi_given_r, py::arg("r"));
  m.def("average_mi_isotropic", py::overload_cast<>(&average_mi_isotropic));

  m.def("quantum_ne_probability", &quantum_ne_probability, py::arg("n"), py::arg("x"), py::arg("y"));
  m.def("min_rectangle_cover",
        [](int n) {
          std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
          for (const auto& r : min_rectangle_cover(n).rectangles) out.emplace_back(r.rows, r.cols);
          return out;
        },
        py::arg("n"), "Minimum cover as (row mask, column mask) pairs.");

  m.def("reproduce_json",
        [](bool quick, std::vector<int> criteria, std::uint64_t seed, unsigned workers) {
          AcceptanceOptions o;
          o.quick = quick;
          o.seed = seed;
          o.workers = workers == 0 ? default_workers() : workers;
          std::vector<CriterionResult> rows;
          {
            py::gil_scoped_release release;
            rows = run_acceptance(o, criteria);
          }
          nlohmann::ordered_json a = nlohmann::ordered_json::array();
          for (const auto& r : rows) a.push_back(to_json(r));
          return a.dump();
        },
        py::arg("quick") = true, py::arg("criteria") = std::vector<int>{},
        py::arg("seed") = AcceptanceOptions{}.seed, py::arg("workers") = 0);
}
