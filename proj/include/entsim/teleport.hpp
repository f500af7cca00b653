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
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entsim/protocol.hpp"
#include "entsim/quantum_core.hpp"

namespace entsim {

/// Magnitude levels sent in the first round: ceil(3n/2) + 2.
int first_round_level(int qubits);

/// Precision level m available to Bob after round K: M0 + K - 1.
int level_after_round(int qubits, int round);

/// alpha^m = 2^(n/2 - m + 1/2) + 2^(n - 2m - 1), rounded up one ulp.
/// Requires m >= ceil(n/2).
double alpha_bound(int qubits, int level);

/// Bits Alice sends in round K: (M0 + 1) 2^(n+1) for K = 1, else 2^(n+1).
std::size_t round_payload_bits(int qubits, int round);

/// Binary digit r >= 1 of |v| for |v| <= 1. |v| == 1 uses the all-ones
/// expansion 0.111...
int magnitude_digit(double v, int r);

/// Alice's round-K payload. Component c = 2j is Re amp(j), c = 2j+1 is
/// Im amp(j). Round 1 lists, per component, the sign bit followed by
/// magnitude digits 1..M0; round K >= 2 lists digit M0+K-1 of every
/// component.
std::string encode_round(const PureState& state, int round);

/// Fixed-point description of the amplitudes known up to `level` digits.
class AmplitudeCode {
 public:
  explicit AmplitudeCode(int qubits);

  /// Full encoding of `state` at `level` (Alice's view).
  static AmplitudeCode from_state(const PureState& state, int level);

  /// Appends the payload of round `round`; rounds must arrive in order.
  void absorb_round(std::string_view payload, int round);

  int qubits() const noexcept { return qubits_; }
  int level() const noexcept { return level_; }
  std::size_t components() const noexcept { return signs_.size(); }

  int sign_bit(std::size_t component) const { return signs_.at(component); }
  int digit(std::size_t component, int r) const;

  /// (-1)^sign (sum_{r<=m} digit_r 2^-r + 2^(-m-1)).
  double midpoint(std::size_t component) const;

  /// The unnormalized estimate Psi^m.
  Eigen::VectorXcd estimate() const;

 private:
  int qubits_;
  int level_ = 0;
  int rounds_ = 0;
  std::vector<std::uint8_t> signs_;
  std::vector<std::vector<std::uint8_t>> digits_;
  std::vector<double> truncated_;
};

struct ProbBracket {
  double p_est = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  double alpha = 0.0;
  double trace = 0.0;
};

/// Brackets from P^m(l) = Tr(B_l) |<beta_l|Psi^m>|^2 for the rank-1
/// refinement. Widths include a small floating-point allowance on top of
/// alpha^m Tr(B_l).
std::vector<ProbBracket> bob_brackets(const AmplitudeCode& code, const Rank1Refinement& povm);

/// T^m = sum_l p_min(l).
double bracket_mass(const std::vector<ProbBracket>& brackets);

class LayoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const noexcept { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Partition of [0,1) built round by round: I^K(l) for every outcome and
/// the remainder R^K. Consecutive intervals share their endpoint doubles,
/// so the tiling has no gaps or overlaps by construction.
class IntervalLayout {
 public:
  explicit IntervalLayout(std::size_t outcomes);

  /// Appends round K = rounds() + 1 from the brackets at level M0 + K - 1.
  /// Throws LayoutError if p_min decreased or p_max increased.
  void add_round(const std::vector<ProbBracket>& brackets);

  std::size_t outcomes() const noexcept { return outcomes_; }
  std::size_t rounds() const noexcept { return intervals_.size(); }
  /// I^K(l), K 1-based.
  const std::vector<Interval>& intervals(std::size_t round) const { return intervals_.at(round - 1); }
  /// R^K = [end of I^K(L), 1).
  Interval remainder(std::size_t round) const { return {boundary_.at(round - 1), 1.0}; }
  /// T at the level of round K, summed directly from the brackets.
  double t_value(std::size_t round) const { return t_values_.at(round - 1); }
  /// sum_{K' <= K} mu(I^K'(l)).
  double accumulated(std::size_t round, std::size_t outcome) const;

 private:
  std::size_t outcomes_;
  std::vector<std::vector<Interval>> intervals_;
  std::vector<double> boundary_;
  std::vector<double> t_values_;
  std::vector<ProbBracket> last_;
};

IntervalLayout build_layout(const std::vector<std::vector<ProbBracket>>& rounds);

/// Names of layout properties that fail at tolerance `tol`: disjointness,
/// separation from R^K, nesting into R^K, covering [0,1), and
/// I^{K+1} + R^{K+1} = R^K. Empty when all hold.
std::vector<std::string> verify_layout(const IntervalLayout& layout, double tol = 1e-12);

/// Classical teleportation of `state` to a Bob holding `povm`. Bob refines
/// the POVM to rank 1, draws r lazily, and outputs the source label of the
/// first interval I^K(l) containing r. Alice's output is 0.
class TeleportProtocol final : public Protocol {
 public:
  TeleportProtocol(PureState state, const Povm& povm);

  std::string name() const override { return "teleport"; }
  bool uses_shared_randomness() const override { return false; }
  std::unique_ptr<Party> make_alice() const override;
  std::unique_ptr<Party> make_bob() const override;

  const PureState& state() const noexcept { return state_; }
  const Rank1Refinement& refinement() const noexcept { return *refinement_; }

  /// Exact per-run cost for a run of `rounds` rounds.
  std::uint64_t forward_bits_for(std::int64_t rounds) const;
  std::uint64_t backward_bits_for(std::int64_t rounds) const { return static_cast<std::uint64_t>(rounds); }

 private:
  PureState state_;
  std::shared_ptr<const Rank1Refinement> refinement_;
};

/// n Bell pairs: Alice samples her outcome on her half (rank-1 refined),
/// computes Bob's conditional pure state and teleports it. Outputs are the
/// original POVM labels on each side.
class EntangledProtocol final : public Protocol {
 public:
  EntangledProtocol(const Povm& alice_povm, const Povm& bob_povm);

  std::string name() const override { return "entangled"; }
  bool uses_shared_randomness() const override { return false; }
  std::unique_ptr<Party> make_alice() const override;
  std::unique_ptr<Party> make_bob() const override;

  /// Tr(A_k^T B_l) / 2^n.
  std::vector<std::vector<double>> joint_distribution() const;

 private:
  int qubits_;
  std::shared_ptr<const Rank1Refinement> alice_;
  std::shared_ptr<const Rank1Refinement> bob_;
  Povm alice_povm_;
  Povm bob_povm_;
};

}  // namespace entsim
