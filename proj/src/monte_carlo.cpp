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

#include "entsim/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace entsim {
namespace {

double mean_of(unsigned __int128 sum, std::uint64_t n) {
  return n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(n);
}

// Standard error of the mean from integer sums of x and x^2.
double stderr_of(unsigned __int128 sum, unsigned __int128 sum2, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double nn = static_cast<double>(n);
  const double mean = static_cast<double>(sum) / nn;
  const double var = (static_cast<double>(sum2) - nn * mean * mean) / (nn - 1.0);
  return std::sqrt(std::max(var, 0.0) / nn);
}

}  // namespace

void EmpiricalStats::add(const TrialRecord& r) {
  ++trials_;
  ++joint_[{r.alice_output, r.bob_output}];
  ++rounds_hist_[r.rounds];
  ++forward_hist_[r.forward_bits];
  const auto f = static_cast<unsigned __int128>(r.forward_bits);
  const auto b = static_cast<unsigned __int128>(r.backward_bits);
  const auto rr = static_cast<unsigned __int128>(r.rounds);
  sum_f_ += f;
  sum_f2_ += f * f;
  sum_b_ += b;
  sum_b2_ += b * b;
  sum_t2_ += (f + b) * (f + b);
  sum_r_ += rr;
  sum_r2_ += rr * rr;
  max_forward_ = std::max(max_forward_, r.forward_bits);
  max_backward_ = std::max(max_backward_, r.backward_bits);
  max_rounds_ = std::max(max_rounds_, r.rounds);
}

void EmpiricalStats::merge(const EmpiricalStats& o) {
  trials_ += o.trials_;
  for (const auto& [k, v] : o.joint_) joint_[k] += v;
  for (const auto& [k, v] : o.rounds_hist_) rounds_hist_[k] += v;
  for (const auto& [k, v] : o.forward_hist_) forward_hist_[k] += v;
  sum_f_ += o.sum_f_;
  sum_f2_ += o.sum_f2_;
  sum_b_ += o.sum_b_;
  sum_b2_ += o.sum_b2_;
  sum_t2_ += o.sum_t2_;
  sum_r_ += o.sum_r_;
  sum_r2_ += o.sum_r2_;
  max_forward_ = std::max(max_forward_, o.max_forward_);
  max_backward_ = std::max(max_backward_, o.max_backward_);
  max_rounds_ = std::max(max_rounds_, o.max_rounds_);
}

std::uint64_t EmpiricalStats::joint_count(std::int64_t a, std::int64_t b) const {
  const auto it = joint_.find({a, b});
  return it == joint_.end() ? 0 : it->second;
}

std::map<std::int64_t, std::uint64_t> EmpiricalStats::alice_counts() const {
  std::map<std::int64_t, std::uint64_t> out;
  for (const auto& [k, v] : joint_) out[k.first] += v;
  return out;
}

std::map<std::int64_t, std::uint64_t> EmpiricalStats::bob_counts() const {
  std::map<std::int64_t, std::uint64_t> out;
  for (const auto& [k, v] : joint_) out[k.second] += v;
  return out;
}

double EmpiricalStats::agreement() const {
  std::uint64_t same = 0;
  for (const auto& [k, v] : joint_) {
    if (k.first == k.second) same += v;
  }
  return trials_ == 0 ? 0.0 : static_cast<double>(same) / static_cast<double>(trials_);
}

double EmpiricalStats::mean_forward() const { return mean_of(sum_f_, trials_); }
double EmpiricalStats::mean_backward() const { return mean_of(sum_b_, trials_); }
double EmpiricalStats::mean_total() const { return mean_of(sum_f_ + sum_b_, trials_); }
double EmpiricalStats::mean_rounds() const { return mean_of(sum_r_, trials_); }
double EmpiricalStats::stderr_forward() const { return stderr_of(sum_f_, sum_f2_, trials_); }
double EmpiricalStats::stderr_backward() const { return stderr_of(sum_b_, sum_b2_, trials_); }
double EmpiricalStats::stderr_total() const { return stderr_of(sum_f_ + sum_b_, sum_t2_, trials_); }
double EmpiricalStats::stderr_rounds() const { return stderr_of(sum_r_, sum_r2_, trials_); }

double EmpiricalStats::round_reached_fraction(std::int64_t k) const {
  std::uint64_t reached = 0;
  for (auto it = rounds_hist_.lower_bound(k); it != rounds_hist_.end(); ++it) reached += it->second;
  return trials_ == 0 ? 0.0 : static_cast<double>(reached) / static_cast<double>(trials_);
}

nlohmann::ordered_json EmpiricalStats::to_json() const {
  nlohmann::ordered_json j;
  j["trials"] = trials_;
  nlohmann::ordered_json joint = nlohmann::ordered_json::array();
  for (const auto& [k, v] : joint_) {
    joint.push_back({{"alice", k.first},
                     {"bob", k.second},
                     {"count", v},
                     {"frequency", static_cast<double>(v) / static_cast<double>(trials_)}});
  }
  j["joint"] = std::move(joint);
  j["bits_forward"] = {{"mean", mean_forward()}, {"stderr", stderr_forward()}, {"max", max_forward_}};
  j["bits_backward"] = {{"mean", mean_backward()}, {"stderr", stderr_backward()}, {"max", max_backward_}};
  j["bits_total"] = {{"mean", mean_total()}, {"stderr", stderr_total()}};
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rounds_hist_) hist[std::to_string(k)] = v;
  j["rounds"] = {{"mean", mean_rounds()}, {"stderr", stderr_rounds()}, {"max", max_rounds_},
                 {"histogram", std::move(hist)}};
  return j;
}

TrialError::TrialError(std::uint64_t trial, const std::string& what)
    : std::runtime_error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}

RandomnessConfig trial_randomness(std::uint64_t master, std::uint64_t trial, bool shared) {
  RandomnessConfig c;
  c.alice_seed = derive_seed(master, 4 * trial);
  c.bob_seed = derive_seed(master, 4 * trial + 1);
  if (shared) c.shared_seed = derive_seed(master, 4 * trial + 2);
  return c;
}

CounterRng trial_input_rng(std::uint64_t master, std::uint64_t trial) {
  return CounterRng(derive_seed(master, 4 * trial + 3));
}

TrialRecord to_record(const RunResult& r) {
  return TrialRecord{r.alice_output, r.bob_output, r.transcript.forward_bits(),
                     r.transcript.backward_bits(), r.transcript.rounds()};
}

MonteCarloResult monte_carlo(const SimulationFactory& factory, const MonteCarloOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(options.workers, 1, options.trials));

  MonteCarloResult result;
  if (options.keep_records) result.records.resize(options.trials);
  std::vector<EmpiricalStats> partial(workers);

  std::mutex error_mutex;
  std::uint64_t first_failed = options.trials;
  std::string first_error;

  auto work = [&](unsigned w) {
    const std::uint64_t begin = options.trials * w / workers;
    const std::uint64_t end = options.trials * (w + 1) / workers;
    for (std::uint64_t t = begin; t < end; ++t) {
      try {
        CounterRng input_rng = trial_input_rng(options.master_seed, t);
        const auto sim = factory(t, input_rng);
        const auto run = sim->run(
            trial_randomness(options.master_seed, t, sim->uses_shared_randomness()), options.run);
        const TrialRecord rec = to_record(run);
        partial[w].add(rec);
        if (options.keep_records) result.records[t] = rec;
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (t < first_failed) {
          first_failed = t;
          first_error = e.what();
        }
        return;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (first_failed < options.trials) throw TrialError(first_failed, first_error);
  for (const auto& p : partial) result.stats.merge(p);
  return result;
}

MonteCarloResult monte_carlo(const Simulation& simulation, const MonteCarloOptions& options) {
  std::shared_ptr<const Simulation> shared(&simulation, [](const Simulation*) {});
  return monte_carlo([&](std::uint64_t, CounterRng&) { return shared; }, options);
}

unsigned default_workers() {
  if (const char* env = std::getenv("ENTSIM_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace entsim
