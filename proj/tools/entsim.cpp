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

// Command-line front end: protocol simulations, information bounds,
// NOT-EQUAL experiments and the reproduction table.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "entsim/acceptance.hpp"
#include "entsim/bell_protocols.hpp"
#include "entsim/info_bounds.hpp"
#include "entsim/io.hpp"
#include "entsim/monte_carlo.hpp"
#include "entsim/ne_complexity.hpp"
#include "entsim/quantum_core.hpp"
#include "entsim/statistics.hpp"
#include "entsim/teleport.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace entsim;

constexpr int kExitValidation = 2;

struct RunFlags {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::int64_t round_cap = 1000000;
  std::string out;
  std::string csv;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--trials", f.trials, "Number of protocol runs")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Master seed (required)")->required();
  cmd->add_option("--workers", f.workers, "Worker threads (default: ENTSIM_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--round-cap", f.round_cap, "Abort a run after this many rounds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Write the JSON report here instead of standard output");
  cmd->add_option("--csv", f.csv, "Write per-trial rows (bits_forward,bits_backward,rounds,outcome)");
}

MonteCarloOptions to_mc(const RunFlags& f) {
  MonteCarloOptions o;
  o.trials = f.trials;
  o.master_seed = f.seed;
  o.workers = f.workers;
  o.run.round_cap = f.round_cap;
  o.keep_records = !f.csv.empty();
  return o;
}

json config_echo(const std::string& command, const RunFlags& f) {
  return {{"command", command}, {"trials", f.trials}, {"seed", f.seed}, {"round_cap", f.round_cap}};
}

void emit(const json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + out);
  os << text;
}

void write_csv(const std::string& path, const std::vector<TrialRecord>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "trial,bits_forward,bits_backward,rounds,alice_output,bob_output\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    os << i << ',' << r.forward_bits << ',' << r.backward_bits << ',' << r.rounds << ','
       << r.alice_output << ',' << r.bob_output << '\n';
  }
}

void check_angle(double v, const char* name) {
  if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1)");
}

// ---- simulate-bell ----------------------------------------------------------

struct BellFlags {
  RunFlags run;
  std::string protocol = "rounds";
  std::string k_code = "unary";
  double x = 0.0;
  double y = 0.0;
};

int simulate_bell(const BellFlags& f) {
  check_angle(f.x, "--x");
  check_angle(f.y, "--y");
  const IndexCode code = f.k_code == "gamma" ? IndexCode::kEliasGamma : IndexCode::kUnary;
  auto proto = make_bell_protocol(parse_bell_protocol(f.protocol), f.x, f.y, code);
  const auto result = monte_carlo(*proto, to_mc(f.run));
  const auto& st = result.stats;
  const auto oracle = bell_joint_distribution(f.x, f.y);

  const int sign[2] = {1, -1};
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;
  json cells = json::array();
  for (int a : sign) {
    for (int b : sign) {
      observed.push_back(st.joint_count(a, b));
      expected.push_back(oracle.prob(a, b));
      cells.push_back({{"a", a}, {"b", b}, {"frequency", static_cast<double>(observed.back()) / st.trials()},
                       {"oracle", oracle.prob(a, b)}});
    }
  }
  const auto chi = stats::chi_square_gof(observed, expected);
  const auto agree = st.joint_count(1, 1) + st.joint_count(-1, -1);
  json report = config_echo("simulate-bell", f.run);
  report["protocol"] = proto->name();
  report["x"] = f.x;
  report["y"] = f.y;
  if (proto->uses_shared_randomness()) report["k_code"] = f.k_code;
  report["version"] = ENTSIM_VERSION;
  report["pr_agree"] = st.agreement();
  report["pr_agree_oracle"] = oracle.agree();
  report["pr_agree_z"] = stats::binomial_z(agree, st.trials(), oracle.agree());
  report["joint"] = cells;
  report["chi_square"] = {{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}};
  report["stats"] = st.to_json();
  if (!f.run.csv.empty()) write_csv(f.run.csv, result.records);
  emit(report, f.run.out);
  return 0;
}

// ---- simulate-teleport / simulate-entangled --------------------------------

json outcome_report(const EmpiricalStats& st, const std::vector<double>& born, bool use_bob) {
  std::vector<std::uint64_t> observed(born.size(), 0);
  for (const auto& [l, c] : use_bob ? st.bob_counts() : st.alice_counts()) {
    observed.at(static_cast<std::size_t>(l)) += c;
  }
  std::vector<double> expected;
  json rows = json::array();
  for (std::size_t l = 0; l < born.size(); ++l) {
    expected.push_back(born[l]);
    rows.push_back({{"outcome", l},
                    {"frequency", static_cast<double>(observed[l]) / st.trials()},
                    {"born", born[l]}});
  }
  const auto chi = stats::chi_square_gof(observed, expected);
  return {{"outcomes", rows},
          {"chi_square", {{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}}}};
}

struct TeleportFlags {
  RunFlags run;
  std::string state;
  std::string povm;
};

int simulate_teleport(const TeleportFlags& f) {
  const PureState state = io::load_state(f.state);
  const Povm povm = io::load_povm(f.povm);
  TeleportProtocol proto(state, povm);
  const auto result = monte_carlo(proto, to_mc(f.run));
  json report = config_echo("simulate-teleport", f.run);
  report["state_file"] = f.state;
  report["povm_file"] = f.povm;
  report["version"] = ENTSIM_VERSION;
  report["qubits"] = state.qubits();
  report["first_round_bits"] = round_payload_bits(state.qubits(), 1);
  report["later_round_bits"] = round_payload_bits(state.qubits(), 2);
  report.update(outcome_report(result.stats, born_probabilities(state, povm), true));
  report["stats"] = result.stats.to_json();
  if (!f.run.csv.empty()) write_csv(f.run.csv, result.records);
  emit(report, f.run.out);
  return 0;
}

struct EntangledFlags {
  RunFlags run;
  std::string alice_povm;
  std::string bob_povm;
};

int simulate_entangled(const EntangledFlags& f) {
  const Povm a = io::load_povm(f.alice_povm);
  const Povm b = io::load_povm(f.bob_povm);
  EntangledProtocol proto(a, b);
  const auto result = monte_carlo(proto, to_mc(f.run));
  const auto& st = result.stats;
  const auto joint = proto.joint_distribution();
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;
  json rows = json::array();
  for (std::size_t k = 0; k < joint.size(); ++k) {
    for (std::size_t l = 0; l < joint[k].size(); ++l) {
      observed.push_back(st.joint_count(static_cast<std::int64_t>(k), static_cast<std::int64_t>(l)));
      expected.push_back(joint[k][l]);
      rows.push_back({{"alice", k}, {"bob", l},
                      {"frequency", static_cast<double>(observed.back()) / st.trials()},
                      {"oracle", joint[k][l]}});
    }
  }
  const auto chi = stats::chi_square_gof(observed, expected);
  json report = config_echo("simulate-entangled", f.run);
  report["alice_povm_file"] = f.alice_povm;
  report["bob_povm_file"] = f.bob_povm;
  report["version"] = ENTSIM_VERSION;
  report["joint"] = rows;
  report["chi_square"] = {{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}};
  report["stats"] = st.to_json();
  if (!f.run.csv.empty()) write_csv(f.run.csv, result.records);
  emit(report, f.run.out);
  return 0;
}

// ---- mi-bound / mi-audit ----------------------------------------------------

struct MiBoundFlags {
  bool quadrature = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool json_out = false;
};

int mi_bound(const MiBoundFlags& f) {
  if (!f.quadrature && f.samples == 0) {
    throw std::invalid_argument("choose --quadrature and/or --monte-carlo N");
  }
  json report = {{"command", "mi-bound"}, {"version", ENTSIM_VERSION}};
  if (f.quadrature) {
    const double q = average_mi_isotropic();
    report["quadrature"] = q;
    report["closed_form"] = std::log2(2.0 / std::sqrt(std::numbers::e));
    if (!f.json_out) std::cout << std::fixed << std::setprecision(6) << q << "\n";
  }
  if (f.samples > 0) {
    const auto mc = isotropic_mi_monte_carlo(f.samples, f.seed);
    report["monte_carlo"] = {{"samples", mc.samples}, {"seed", f.seed}, {"mean", mc.mean},
                             {"standard_error", mc.standard_error}};
    if (!f.json_out) {
      std::cout << std::fixed << std::setprecision(6) << mc.mean << " +/- " << mc.standard_error
                << " (" << mc.samples << " samples)\n";
    }
  }
  if (f.json_out) std::cout << report.dump(2) << "\n";
  return 0;
}

Povm planar_povm(double x) {
  const auto [plus, minus] = r_projectors(x);
  return Povm(1, std::vector<Eigen::MatrixXcd>{plus, minus});
}

struct AuditFlags {
  RunFlags run;
  std::string protocol = "rounds";
  double x = 0.0;
  double y = 0.0;
};

int mi_audit(const AuditFlags& f) {
  check_angle(f.x, "--x");
  check_angle(f.y, "--y");
  std::shared_ptr<const Simulation> sim;
  if (f.protocol == "rounds") {
    sim = std::make_shared<RoundsProtocol>(f.x, f.y);
  } else if (f.protocol == "teleport") {
    // Alice measures R(x) on her half of a Bell pair, then teleports Bob's conditional state.
    sim = std::make_shared<EntangledProtocol>(planar_povm(f.x), planar_povm(f.y));
  } else {
    throw std::invalid_argument("--protocol must be rounds or teleport (the bound needs no shared randomness)");
  }
  const auto st = monte_carlo(*sim, to_mc(f.run)).stats;
  const auto rep = appendix_audit(*sim, st);
  json report = config_echo("mi-audit", f.run);
  report["protocol"] = sim->name();
  report["x"] = f.x;
  report["y"] = f.y;
  report["version"] = ENTSIM_VERSION;
  report["mutual_information"] = {{"value", rep.mi.value}, {"standard_error", rep.mi.standard_error},
                                  {"degenerate", rep.mi.degenerate}};
  report["mean_forward"] = rep.mean_forward;
  report["mean_backward"] = rep.mean_backward;
  report["rhs"] = rep.rhs;
  report["holds"] = rep.holds;
  report["stats"] = st.to_json();
  emit(report, f.run.out);
  return rep.holds ? 0 : 1;
}

// ---- ne ---------------------------------------------------------------------

struct NeFlags {
  int n = 1;
  bool exhaustive = false;
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::string protocol = "rounds";
  RunFlags run;
};

int ne_quantum(const NeFlags& f) {
  json report = {{"command", "ne quantum"}, {"n", f.n}, {"version", ENTSIM_VERSION}};
  if (f.exhaustive) {
    std::uint64_t bad = 0, pairs = 0;
    double min_positive = 1.0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << f.n); ++x) {
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << f.n); ++y) {
        const double p = quantum_ne_probability(f.n, x, y);
        ++pairs;
        if ((p == 0.0) != (x == y)) ++bad;
        if (x != y) min_positive = std::min(min_positive, p);
      }
    }
    report["pairs"] = pairs;
    report["violations"] = bad;
    report["min_probability_off_diagonal"] = min_positive;
    std::cout << report.dump(2) << "\n";
    return bad == 0 ? 0 : 1;
  }
  report["x"] = f.x;
  report["y"] = f.y;
  report["probability"] = quantum_ne_probability(f.n, f.x, f.y);
  std::cout << report.dump(2) << "\n";
  return 0;
}

int ne_wrap(const NeFlags& f) {
  NotEqualWrapper wrapper(parse_bell_protocol(f.protocol), f.n, f.x, f.y);
  const auto result = monte_carlo(wrapper, to_mc(f.run));
  const auto& st = result.stats;
  std::uint64_t ones = 0;
  for (const auto& [b, c] : st.bob_counts()) {
    if (b == 1) ones += c;
  }
  const double p = quantum_ne_probability(f.n, f.x, f.y);
  json report = config_echo("ne wrap", f.run);
  report["protocol"] = wrapper.name();
  report["n"] = f.n;
  report["x"] = f.x;
  report["y"] = f.y;
  report["version"] = ENTSIM_VERSION;
  report["pr_one"] = static_cast<double>(ones) / st.trials();
  report["pr_one_oracle"] = p;
  report["pr_one_z"] = stats::binomial_z(ones, st.trials(), p);
  report["stats"] = st.to_json();
  if (!f.run.csv.empty()) write_csv(f.run.csv, result.records);
  emit(report, f.run.out);
  return 0;
}

int ne_cover(const NeFlags& f) {
  const auto cover = min_rectangle_cover(f.n);
  json rects = json::array();
  auto members = [](std::uint32_t mask) {
    json a = json::array();
    for (int i = 0; i < 32; ++i) {
      if ((mask >> i) & 1U) a.push_back(i);
    }
    return a;
  };
  for (const auto& r : cover.rectangles) rects.push_back({{"rows", members(r.rows)}, {"cols", members(r.cols)}});
  const auto c = cover.rectangles.size();
  json report = {{"command", "ne cover"},
                 {"n", f.n},
                 {"version", ENTSIM_VERSION},
                 {"cover_size", c},
                 {"lower_bound_bits", std::ceil(std::log2(static_cast<double>(c)))},
                 {"log2_n", std::log2(static_cast<double>(f.n))},
                 {"witness_valid", is_valid_ne_cover(cover)},
                 {"rectangles", rects}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ---- reproduce --------------------------------------------------------------

struct ReproduceFlags {
  bool quick = false;
  bool json_out = false;
  std::uint64_t seed = AcceptanceOptions{}.seed;
  unsigned workers = 1;
  std::vector<int> criteria;
};

int reproduce(const ReproduceFlags& f) {
  AcceptanceOptions o;
  o.quick = f.quick;
  o.seed = f.seed;
  o.workers = f.workers;
  const auto rows = run_acceptance(o, f.criteria);
  bool ok = true;
  for (const auto& r : rows) ok = ok && (!r.applicable || r.passed);
  if (f.json_out) {
    json report = {{"command", "reproduce"}, {"quick", f.quick}, {"seed", f.seed},
                   {"version", ENTSIM_VERSION}, {"all_passed", ok}};
    json a = json::array();
    for (const auto& r : rows) a.push_back(to_json(r));
    report["criteria"] = a;
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << format_table(rows);
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entsim: classical simulation of entanglement with bit-level communication accounting"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ENTSIM_VERSION);
  const unsigned workers = default_workers();

  BellFlags bell;
  bell.run.workers = workers;
  auto* c_bell = app.add_subcommand("simulate-bell", "Simulate R(x) x R(y) measurements on a Bell pair");
  c_bell->add_option("--protocol", bell.protocol, "steiner (shared randomness) or rounds (none)")
      ->check(CLI::IsMember({"steiner", "rounds"}));
  c_bell->add_option("--x", bell.x, "Alice's angle in [0, 1)");
  c_bell->add_option("--y", bell.y, "Bob's angle in [0, 1)");
  c_bell->add_option("--k-code", bell.k_code, "Index code for steiner: unary or gamma")
      ->check(CLI::IsMember({"unary", "gamma"}));
  add_run_flags(c_bell, bell.run);

  TeleportFlags tele;
  tele.run.workers = workers;
  auto* c_tele = app.add_subcommand("simulate-teleport", "Classical teleportation of a state to a POVM holder");
  c_tele->add_option("--state", tele.state, "State JSON file")->required();
  c_tele->add_option("--povm", tele.povm, "POVM JSON file")->required();
  add_run_flags(c_tele, tele.run);

  EntangledFlags ent;
  ent.run.workers = workers;
  auto* c_ent = app.add_subcommand("simulate-entangled", "Both parties measure POVMs on n Bell pairs");
  c_ent->add_option("--alice-povm", ent.alice_povm, "Alice's POVM JSON file")->required();
  c_ent->add_option("--bob-povm", ent.bob_povm, "Bob's POVM JSON file")->required();
  add_run_flags(c_ent, ent.run);

  MiBoundFlags mib;
  auto* c_mib = app.add_subcommand("mi-bound", "Average mutual information for isotropic measurements");
  c_mib->add_flag("--quadrature", mib.quadrature, "Adaptive quadrature value");
  c_mib->add_option("--monte-carlo", mib.samples, "Sphere-sampling estimate with this many samples");
  c_mib->add_option("--seed", mib.seed, "Seed for --monte-carlo");
  c_mib->add_flag("--json", mib.json_out, "Print a JSON report");

  AuditFlags aud;
  aud.run.workers = workers;
  aud.run.trials = 100000;
  auto* c_aud = app.add_subcommand("mi-audit", "Check I(a:b) <= mean forward + backward bits");
  c_aud->add_option("--protocol", aud.protocol, "rounds or teleport")
      ->check(CLI::IsMember({"rounds", "teleport"}));
  c_aud->add_option("--x", aud.x, "Alice's angle in [0, 1)");
  c_aud->add_option("--y", aud.y, "Bob's angle in [0, 1)");
  add_run_flags(c_aud, aud.run);

  NeFlags ne;
  ne.run.workers = workers;
  auto* c_ne = app.add_subcommand("ne", "NOT-EQUAL experiments");
  c_ne->require_subcommand(1);
  auto* c_neq = c_ne->add_subcommand("quantum", "One-qubit protocol probability");
  c_neq->add_option("--n", ne.n, "Input bit length")->required()->check(CLI::Range(1, 52));
  c_neq->add_flag("--exhaustive", ne.exhaustive, "Sweep all input pairs");
  c_neq->add_option("--x", ne.x, "Alice's input");
  c_neq->add_option("--y", ne.y, "Bob's input");
  auto* c_new = c_ne->add_subcommand("wrap", "Nondeterministic NE protocol built from a Bell simulation");
  c_new->add_option("--protocol", ne.protocol, "steiner or rounds")->check(CLI::IsMember({"steiner", "rounds"}));
  c_new->add_option("--n", ne.n, "Input bit length")->required()->check(CLI::Range(1, 52));
  c_new->add_option("--x", ne.x, "Alice's input")->required();
  c_new->add_option("--y", ne.y, "Bob's input")->required();
  add_run_flags(c_new, ne.run);
  auto* c_nec = c_ne->add_subcommand("cover", "Exact minimum 1-rectangle cover of the NE matrix");
  c_nec->add_option("--n", ne.n, "Input bit length (1, 2 or 3)")->required()->check(CLI::Range(1, 3));

  ReproduceFlags rep;
  rep.workers = workers;
  auto* c_rep = app.add_subcommand("reproduce", "Run the acceptance suite and print the table");
  c_rep->add_flag("--quick", rep.quick, "1e4 trials per experiment with 5 sigma tolerances");
  c_rep->add_flag("--json", rep.json_out, "Machine-readable output");
  c_rep->add_option("--seed", rep.seed, "Master seed");
  c_rep->add_option("--workers", rep.workers, "Worker threads")->check(CLI::PositiveNumber);
  c_rep->add_option("--criterion", rep.criteria, "Run only these criteria")->check(CLI::Range(1, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (c_bell->parsed()) return simulate_bell(bell);
    if (c_tele->parsed()) return simulate_teleport(tele);
    if (c_ent->parsed()) return simulate_entangled(ent);
    if (c_mib->parsed()) return mi_bound(mib);
    if (c_aud->parsed()) return mi_audit(aud);
    if (c_neq->parsed()) return ne_quantum(ne);
    if (c_new->parsed()) return ne_wrap(ne);
    if (c_nec->parsed()) return ne_cover(ne);
    if (c_rep->parsed()) return reproduce(rep);
  } catch (const std::invalid_argument& e) {
    // ValidationError and malformed inputs land here.
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitValidation;
}
