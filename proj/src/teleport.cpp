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

#include "entsim/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entsim/dyadic.hpp"

namespace entsim {

int first_round_level(int qubits) {
  if (qubits < 0) throw std::invalid_argument("qubit count must be non-negative");
  return (3 * qubits + 1) / 2 + 2;
}

int level_after_round(int qubits, int round) {
  if (round < 1) throw std::invalid_argument("rounds are numbered from 1");
  return first_round_level(qubits) + round - 1;
}

double alpha_bound(int qubits, int level) {
  if (level < (qubits + 1) / 2) {
    throw std::domain_error("alpha_bound: level m must be at least ceil(n/2)");
  }
  const double value = std::exp2(0.5 * qubits - level + 0.5) + std::exp2(qubits - 2.0 * level - 1.0);
  return std::nextafter(value, std::numeric_limits<double>::infinity());
}

std::size_t round_payload_bits(int qubits, int round) {
  const std::size_t per_digit = std::size_t{1} << (qubits + 1);
  if (round < 1) throw std::invalid_argument("rounds are numbered from 1");
  if (round == 1) return static_cast<std::size_t>(first_round_level(qubits) + 1) * per_digit;
  return per_digit;
}

int magnitude_digit(double v, int r) {
  if (r < 1) throw std::invalid_argument("magnitude digits are numbered from 1");
  const double a = std::abs(v);
  if (a >= 1.0) return 1;
  return std::fmod(std::floor(std::ldexp(a, r)), 2.0) != 0.0 ? 1 : 0;
}

namespace {

double component_value(const PureState& state, std::size_t c) {
  const Complex z = state.amplitude(c / 2);
  return (c % 2 == 0) ? z.real() : z.imag();
}

}  // namespace

std::string encode_round(const PureState& state, int round) {
  const int n = state.qubits();
  const std::size_t comps = 2 * state.dimension();
  const int m0 = first_round_level(n);
  std::string bits;
  bits.reserve(round_payload_bits(n, round));
  for (std::size_t c = 0; c < comps; ++c) {
    const double v = component_value(state, c);
    if (round == 1) {
      bits.push_back(v < 0.0 ? '1' : '0');
      for (int r = 1; r <= m0; ++r) bits.push_back(static_cast<char>('0' + magnitude_digit(v, r)));
    } else {
      bits.push_back(static_cast<char>('0' + magnitude_digit(v, m0 + round - 1)));
    }
  }
  return bits;
}

AmplitudeCode::AmplitudeCode(int qubits)
    : qubits_(qubits),
      signs_(std::size_t{2} << qubits, 0),
      digits_(std::size_t{2} << qubits),
      truncated_(std::size_t{2} << qubits, 0.0) {}

AmplitudeCode AmplitudeCode::from_state(const PureState& state, int level) {
  AmplitudeCode code(state.qubits());
  const int m0 = first_round_level(state.qubits());
  if (level < m0) {
    // Below the first-round level there is no payload form; fill directly.
    for (std::size_t c = 0; c < code.components(); ++c) {
      const double v = component_value(state, c);
      code.signs_[c] = v < 0.0 ? 1 : 0;
      for (int r = 1; r <= level; ++r) {
        const int d = magnitude_digit(v, r);
        code.digits_[c].push_back(static_cast<std::uint8_t>(d));
        code.truncated_[c] += d * std::ldexp(1.0, -r);
      }
    }
    code.level_ = level;
    return code;
  }
  for (int k = 1; level_after_round(state.qubits(), k) <= level; ++k) {
    code.absorb_round(encode_round(state, k), k);
  }
  return code;
}

void AmplitudeCode::absorb_round(std::string_view payload, int round) {
  if (round != rounds_ + 1) throw ProtocolError("amplitude payloads must arrive in round order");
  if (payload.size() != round_payload_bits(qubits_, round)) {
    throw ProtocolError("amplitude payload has the wrong length for round " + std::to_string(round));
  }
  const int m0 = first_round_level(qubits_);
  std::size_t pos = 0;
  auto next = [&]() -> int {
    const char ch = payload[pos++];
    if (ch != '0' && ch != '1') throw ProtocolError("amplitude payload must be binary");
    return ch - '0';
  };
  for (std::size_t c = 0; c < components(); ++c) {
    if (round == 1) {
      signs_[c] = static_cast<std::uint8_t>(next());
      for (int r = 1; r <= m0; ++r) {
        const int d = next();
        digits_[c].push_back(static_cast<std::uint8_t>(d));
        truncated_[c] += d * std::ldexp(1.0, -r);
      }
    } else {
      const int d = next();
      digits_[c].push_back(static_cast<std::uint8_t>(d));
      truncated_[c] += d * std::ldexp(1.0, -(m0 + round - 1));
    }
  }
  rounds_ = round;
  level_ = level_after_round(qubits_, round);
}

int AmplitudeCode::digit(std::size_t component, int r) const {
  if (r < 1 || r > level_) throw std::out_of_range("digit index beyond the known level");
  return digits_.at(component)[static_cast<std::size_t>(r - 1)];
}

double AmplitudeCode::midpoint(std::size_t component) const {
  const double magnitude = truncated_.at(component) + std::ldexp(1.0, -level_ - 1);
  return signs_[component] != 0 ? -magnitude : magnitude;
}

Eigen::VectorXcd AmplitudeCode::estimate() const {
  const Eigen::Index dim = Eigen::Index{1} << qubits_;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto c = static_cast<std::size_t>(2 * j);
    v(j) = Complex(midpoint(c), midpoint(c + 1));
  }
  return v;
}

std::vector<ProbBracket> bob_brackets(const AmplitudeCode& code, const Rank1Refinement& povm) {
  if (code.qubits() != povm.povm.qubits()) {
    throw ValidationError("bob_brackets: state code and POVM act on different qubit counts");
  }
  const double alpha = alpha_bound(code.qubits(), code.level());
  const Eigen::VectorXcd psi = code.estimate();
  const double dim = static_cast<double>(psi.size());
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<ProbBracket> out;
  out.reserve(povm.directions.size());
  for (std::size_t l = 0; l < povm.directions.size(); ++l) {
    const double tr = povm.weights[l];
    const double p_est = tr * std::norm(povm.directions[l].dot(psi));
    // Rounding allowance for the inner product and the products above.
    const double guard = tr * (4.0 * dim + 8.0) * std::numeric_limits<double>::epsilon();
    const double width = alpha * tr + guard;
    ProbBracket b;
    b.p_est = p_est;
    b.alpha = alpha;
    b.trace = tr;
    b.p_min = std::max(0.0, std::nextafter(p_est - width, -kInf));
    b.p_max = std::min(1.0, std::nextafter(p_est + width, kInf));
    out.push_back(b);
  }
  return out;
}

double bracket_mass(const std::vector<ProbBracket>& brackets) {
  double t = 0.0;
  for (const auto& b : brackets) t += b.p_min;
  return t;
}

IntervalLayout::IntervalLayout(std::size_t outcomes) : outcomes_(outcomes) {
  if (outcomes == 0) throw std::invalid_argument("layout needs at least one outcome");
}

void IntervalLayout::add_round(const std::vector<ProbBracket>& brackets) {
  if (brackets.size() != outcomes_) throw LayoutError("bracket count does not match the outcome count");
  const bool first = intervals_.empty();
  double b = first ? 0.0 : boundary_.back();
  std::vector<Interval> row;
  row.reserve(outcomes_);
  for (std::size_t l = 0; l < outcomes_; ++l) {
    double delta = brackets[l].p_min;
    if (!first) {
      if (brackets[l].p_min < last_[l].p_min) {
        throw LayoutError("p_min decreased under refinement for outcome " + std::to_string(l));
      }
      if (brackets[l].p_max > last_[l].p_max) {
        throw LayoutError("p_max increased under refinement for outcome " + std::to_string(l));
      }
      delta = brackets[l].p_min - last_[l].p_min;
    }
    const double e = b + delta;
    row.push_back({b, e});
    b = e;
  }
  if (b > 1.0) throw LayoutError("bracket lower bounds sum past 1");
  intervals_.push_back(std::move(row));
  boundary_.push_back(b);
  t_values_.push_back(bracket_mass(brackets));
  last_ = brackets;
}

double IntervalLayout::accumulated(std::size_t round, std::size_t outcome) const {
  double s = 0.0;
  for (std::size_t k = 1; k <= round; ++k) s += intervals(k).at(outcome).length();
  return s;
}

IntervalLayout build_layout(const std::vector<std::vector<ProbBracket>>& rounds) {
  if (rounds.empty()) throw std::invalid_argument("build_layout: no rounds given");
  IntervalLayout layout(rounds.front().size());
  for (const auto& r : rounds) layout.add_round(r);
  return layout;
}

namespace {

// True if the nonempty intervals tile [from, to) contiguously within tol.
bool tiles(std::vector<Interval> parts, double from, double to, double tol) {
  std::erase_if(parts, [](const Interval& i) { return !(i.hi > i.lo); });
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  double cursor = from;
  for (const auto& p : parts) {
    if (std::abs(p.lo - cursor) > tol) return false;
    cursor = p.hi;
  }
  return std::abs(cursor - to) <= tol;
}

}  // namespace

std::vector<std::string> verify_layout(const IntervalLayout& layout, double tol) {
  std::vector<std::string> failures;
  const std::size_t rounds = layout.rounds();
  std::vector<Interval> all;
  for (std::size_t k = 1; k <= rounds; ++k) {
    for (const auto& i : layout.intervals(k)) {
      if (i.hi < i.lo - tol) failures.push_back("negative-length interval in round " + std::to_string(k));
      all.push_back(i);
    }
  }
  {
    std::vector<Interval> nonempty;
    for (const auto& i : all) {
      if (i.hi > i.lo) nonempty.push_back(i);
    }
    std::sort(nonempty.begin(), nonempty.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < nonempty.size(); ++i) {
      if (nonempty[i].lo < nonempty[i - 1].hi - tol) {
        failures.emplace_back("property 1: intervals I^K(l) overlap");
        break;
      }
    }
  }
  for (std::size_t k = 1; k <= rounds; ++k) {
    const Interval rk = layout.remainder(k);
    std::vector<Interval> upto;
    for (std::size_t kp = 1; kp <= rounds; ++kp) {
      for (const auto& i : layout.intervals(kp)) {
        if (!(i.hi > i.lo)) continue;
        if (kp <= k && i.hi > rk.lo + tol) {
          failures.push_back("property 2: I^K'(l) meets R^" + std::to_string(k));
        }
        if (kp > k && i.lo < rk.lo - tol) {
          failures.push_back("property 3: I^K'(l) escapes R^" + std::to_string(k));
        }
        if (kp <= k) upto.push_back(i);
      }
    }
    if (!tiles(upto, 0.0, rk.lo, tol)) {
      failures.push_back("property 4: union up to round " + std::to_string(k) + " with R^K is not [0,1)");
    }
    if (k < rounds) {
      if (!tiles(layout.intervals(k + 1), rk.lo, layout.remainder(k + 1).lo, tol)) {
        failures.push_back("property 5: I^{K+1} and R^{K+1} do not tile R^" + std::to_string(k));
      }
    }
    if (std::abs(rk.lo - layout.t_value(k)) > tol) {
      failures.push_back("R^" + std::to_string(k) + " start differs from T");
    }
  }
  return failures;
}

namespace {

class TeleportSender final : public Party {
 public:
  explicit TeleportSender(const PureState* state) : state_(state) {}

  void set_state(const PureState* state) { state_ = state; }

  std::optional<std::string> act(PartyContext&, std::string_view incoming) override {
    if (done_) return std::nullopt;
    if (round_ == 0 || incoming == "0") return encode_round(*state_, ++round_);
    if (incoming == "1") {
      done_ = true;
      return std::nullopt;
    }
    throw ProtocolError("teleport: unexpected reply from Bob");
  }

  std::int64_t output() const override { return 0; }

 private:
  const PureState* state_;
  int round_ = 0;
  bool done_ = false;
};

class TeleportReceiver final : public Party {
 public:
  explicit TeleportReceiver(std::shared_ptr<const Rank1Refinement> povm)
      : povm_(std::move(povm)), code_(povm_->povm.qubits()), layout_(povm_->povm.size()) {}

  std::optional<std::string> act(PartyContext& ctx, std::string_view incoming) override {
    if (incoming.empty()) return std::nullopt;
    ++round_;
    code_.absorb_round(incoming, round_);
    layout_.add_round(bob_brackets(code_, *povm_));
    const auto k = static_cast<std::size_t>(round_);
    if (!r_.less_than(layout_.remainder(k).lo, ctx.private_rng())) return std::string("0");
    const auto& row = layout_.intervals(k);
    for (std::size_t l = 0; l < row.size(); ++l) {
      if (r_.less_than(row[l].hi, ctx.private_rng())) {
        output_ = static_cast<std::int64_t>(povm_->source[l]);
        return std::string("1");
      }
    }
    throw LayoutError("uniform draw fell outside the round's intervals");
  }

  std::int64_t output() const override { return output_; }

 private:
  std::shared_ptr<const Rank1Refinement> povm_;
  AmplitudeCode code_;
  IntervalLayout layout_;
  LazyUniform r_;
  int round_ = 0;
  std::int64_t output_ = -1;
};

class EntangledAlice final : public Party {
 public:
  EntangledAlice(int qubits, std::shared_ptr<const Rank1Refinement> povm)
      : qubits_(qubits), povm_(std::move(povm)), sender_(nullptr) {}

  std::optional<std::string> act(PartyContext& ctx, std::string_view incoming) override {
    if (!bob_state_) {
      // Sample our own outcome; Bob's half collapses to conj(direction).
      const double u = ctx.private_rng().uniform() * std::ldexp(1.0, qubits_);
      std::size_t pick = povm_->weights.size() - 1;
      double acc = 0.0;
      for (std::size_t i = 0; i < povm_->weights.size(); ++i) {
        acc += povm_->weights[i];
        if (u < acc) {
          pick = i;
          break;
        }
      }
      output_ = static_cast<std::int64_t>(povm_->source[pick]);
      bob_state_.emplace(qubits_, povm_->directions[pick].conjugate().normalized());
      sender_.set_state(&*bob_state_);
    }
    return sender_.act(ctx, incoming);
  }

  std::int64_t output() const override { return output_; }

 private:
  int qubits_;
  std::shared_ptr<const Rank1Refinement> povm_;
  std::optional<PureState> bob_state_;
  TeleportSender sender_;
  std::int64_t output_ = -1;
};

}  // namespace

TeleportProtocol::TeleportProtocol(PureState state, const Povm& povm)
    : state_(std::move(state)),
      refinement_(std::make_shared<const Rank1Refinement>(rank1_decompose(povm))) {
  if (state_.qubits() != povm.qubits()) {
    throw ValidationError("teleport: state and POVM act on different qubit counts");
  }
}

std::unique_ptr<Party> TeleportProtocol::make_alice() const {
  return std::make_unique<TeleportSender>(&state_);
}

std::unique_ptr<Party> TeleportProtocol::make_bob() const {
  return std::make_unique<TeleportReceiver>(refinement_);
}

std::uint64_t TeleportProtocol::forward_bits_for(std::int64_t rounds) const {
  const int n = state_.qubits();
  return round_payload_bits(n, 1) + static_cast<std::uint64_t>(rounds - 1) * round_payload_bits(n, 2);
}

EntangledProtocol::EntangledProtocol(const Povm& alice_povm, const Povm& bob_povm)
    : qubits_(alice_povm.qubits()),
      alice_(std::make_shared<const Rank1Refinement>(rank1_decompose(alice_povm))),
      bob_(std::make_shared<const Rank1Refinement>(rank1_decompose(bob_povm))),
      alice_povm_(alice_povm),
      bob_povm_(bob_povm) {
  if (alice_povm.qubits() != bob_povm.qubits()) {
    throw ValidationError("entangled: both POVMs must act on the same number of qubits");
  }
}

std::unique_ptr<Party> EntangledProtocol::make_alice() const {
  return std::make_unique<EntangledAlice>(qubits_, alice_);
}

std::unique_ptr<Party> EntangledProtocol::make_bob() const {
  return std::make_unique<TeleportReceiver>(bob_);
}

std::vector<std::vector<double>> EntangledProtocol::joint_distribution() const {
  const double dim = static_cast<double>(std::size_t{1} << qubits_);
  std::vector<std::vector<double>> out(alice_povm_.size(), std::vector<double>(bob_povm_.size()));
  for (std::size_t k = 0; k < alice_povm_.size(); ++k) {
    for (std::size_t l = 0; l < bob_povm_.size(); ++l) {
      const auto& a = alice_povm_.element(k).matrix();
      const auto& b = bob_povm_.element(l).matrix();
      out[k][l] = (a.transpose() * b).trace().real() / dim;
    }
  }
  return out;
}

}  // namespace entsim
