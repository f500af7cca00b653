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
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"

#include "entsim/protocol.hpp"

namespace entsim {

struct TrialRecord {
  std::int64_t alice_output = 0;
  std::int64_t bob_output = 0;
  std::uint64_t forward_bits = 0;
  std::uint64_t backward_bits = 0;
  std::int64_t rounds = 0;
};

/// Aggregate over independent trials. Every accumulator is an integer, so
/// the result does not depend on how trials were split across workers.
class EmpiricalStats {
 public:
  void add(const TrialRecord& r);
  void merge(const EmpiricalStats& other);

  std::uint64_t trials() const noexcept { return trials_; }

  const std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t>& joint_counts() const noexcept {
    return joint_;
  }
  std::uint64_t joint_count(std::int64_t a, std::int64_t b) const;
  std::map<std::int64_t, std::uint64_t> alice_counts() const;
  std::map<std::int64_t, std::uint64_t> bob_counts() const;
  /// Empirical Pr[alice_output == bob_output].
  double agreement() const;

  const std::map<std::int64_t, std::uint64_t>& round_histogram() const noexcept { return rounds_hist_; }
  const std::map<std::uint64_t, std::uint64_t>& forward_histogram() const noexcept { return forward_hist_; }

  double mean_forward() const;
  double mean_backward() const;
  double mean_total() const;
  double mean_rounds() const;
  double stderr_forward() const;
  double stderr_backward() const;
  double stderr_total() const;
  double stderr_rounds() const;
  std::uint64_t max_forward() const noexcept { return max_forward_; }
  std::uint64_t max_backward() const noexcept { return max_backward_; }
  std::int64_t max_rounds() const noexcept { return max_rounds_; }

  /// Fraction of trials with at least `k` rounds.
  double round_reached_fraction(std::int64_t k) const;

  nlohmann::ordered_json to_json() const;

 private:
  std::uint64_t trials_ = 0;
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> joint_;
  std::map<std::int64_t, std::uint64_t> rounds_hist_;
  std::map<std::uint64_t, std::uint64_t> forward_hist_;
  unsigned __int128 sum_f_ = 0, sum_f2_ = 0, sum_b_ = 0, sum_b2_ = 0, sum_t2_ = 0, sum_r_ = 0, sum_r2_ = 0;
  std::uint64_t max_forward_ = 0, max_backward_ = 0;
  std::int64_t max_rounds_ = 0;
};

struct MonteCarloOptions {
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  RunOptions run;
  bool keep_records = false;
};

struct MonteCarloResult {
  EmpiricalStats stats;
  std::vector<TrialRecord> records;  // filled only with keep_records
};

/// A single run failed; carries the trial index.
class TrialError : public std::runtime_error {
 public:
  TrialError(std::uint64_t trial, const std::string& what);
  std::uint64_t trial() const noexcept { return trial_; }

 private:
  std::uint64_t trial_;
};

/// Seeds for trial `trial` under `master`: independent counter-derived
/// streams, with a shared seed only when the simulation reads one.
RandomnessConfig trial_randomness(std::uint64_t master, std::uint64_t trial, bool shared);

/// Stream for sampling the inputs of trial `trial`.
CounterRng trial_input_rng(std::uint64_t master, std::uint64_t trial);

TrialRecord to_record(const RunResult& r);

/// Builds the simulation for one trial from that trial's input stream.
using SimulationFactory =
    std::function<std::shared_ptr<const Simulation>(std::uint64_t trial, CounterRng& input_rng)>;

MonteCarloResult monte_carlo(const Simulation& simulation, const MonteCarloOptions& options);
MonteCarloResult monte_carlo(const SimulationFactory& factory, const MonteCarloOptions& options);

/// ENTSIM_WORKERS if set, otherwise the hardware concurrency (at least 1).
unsigned default_workers();

}  // namespace entsim
