// Copyright 2026 The Limsup Games Authors
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

#ifndef LIMSUP_GAMES_H_
#define LIMSUP_GAMES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "limsup/automaton.h"
#include "limsup/dyadic.h"
#include "limsup/tree.h"

namespace limsup {

// II's move: v alone in Gamma and Gamma_R, the pair (v, w) in Gamma'.
struct PlayerTwoMove {
  Dyadic v;
  std::optional<Dyadic> w;
  friend bool operator==(const PlayerTwoMove&, const PlayerTwoMove&) = default;
};

// Descriptor of a strategy's internal state. Two equal keys within one run
// must mean identical future behavior on identical future inputs.
using StateKey = std::vector<std::int64_t>;
using Counters = std::map<std::string, std::string>;

// Raised by a strategy that cannot honor its contract (no legal pick, value
// outside an expected range, ...). The engine records it as a fault.
class StrategyFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PlayerOneStrategy {
 public:
  virtual ~PlayerOneStrategy() = default;
  virtual std::unique_ptr<PlayerOneStrategy> clone() const = 0;
  // x_t given II's move in round t - 1 (nullopt in round 0).
  virtual Letter move(const std::optional<PlayerTwoMove>& last) = 0;
  // nullopt when the current state has no finite descriptor.
  virtual std::optional<StateKey> state_key() const = 0;
  // True when the reachable state space is infinite; keys may still repeat
  // once the strategy settles.
  virtual bool unbounded() const { return false; }
  virtual std::string name() const = 0;
  virtual Counters counters() const { return {}; }
};

class PlayerTwoStrategy {
 public:
  virtual ~PlayerTwoStrategy() = default;
  virtual std::unique_ptr<PlayerTwoStrategy> clone() const = 0;
  // II's answer to x_t.
  virtual PlayerTwoMove move(Letter x) = 0;
  virtual std::optional<StateKey> state_key() const = 0;
  virtual bool unbounded() const { return false; }
  virtual std::string name() const = 0;
  virtual Counters counters() const { return {}; }
};

using PlayerOnePtr = std::unique_ptr<PlayerOneStrategy>;
using PlayerTwoPtr = std::unique_ptr<PlayerTwoStrategy>;

// The set R of values II may use in Gamma_R: an explicit finite set or the
// grid {z / 2^exponent : lo <= z / 2^exponent <= hi}.
class ValueSet {
 public:
  static ValueSet finite(std::vector<Dyadic> values);
  static ValueSet grid(std::uint32_t exponent, const Dyadic& lo,
                       const Dyadic& hi);

  bool contains(const Dyadic& y) const;
  // A point of R within d(y, R) + tolerance of y. Both kinds return an exact
  // nearest point (the smaller one on ties), so any tolerance > 0 is met.
  Dyadic near(const Dyadic& y, const Dyadic& tolerance) const;
  // d(y, R).
  Dyadic distance(const Dyadic& y) const;

  bool is_finite() const { return !grid_; }
  const std::vector<Dyadic>& values() const { return values_; }
  std::string to_string() const;

  friend bool operator==(const ValueSet&, const ValueSet&) = default;

 private:
  ValueSet() = default;
  Dyadic nearest(const Dyadic& y) const;

  std::vector<Dyadic> values_;  // sorted; empty for grids
  bool grid_ = false;
  std::uint32_t exponent_ = 0;
  Dyadic lo_;
  Dyadic hi_;
};

enum class GameVariant { kGamma, kGammaPrime, kGammaRestricted };

struct GameKind {
  GameVariant variant = GameVariant::kGamma;
  std::optional<ValueSet> restricted;

  static GameKind gamma() { return {}; }
  static GameKind gamma_prime() { return {GameVariant::kGammaPrime, {}}; }
  static GameKind restricted_to(ValueSet r) {
    return {GameVariant::kGammaRestricted, std::move(r)};
  }
  bool pairs() const { return variant == GameVariant::kGammaPrime; }
  std::string name() const;
};

struct Round {
  Letter x = 0;
  PlayerTwoMove move;
  friend bool operator==(const Round&, const Round&) = default;
};

// Rounds start..start+period-1 repeat forever.
struct Lasso {
  std::size_t start = 0;
  std::size_t period = 0;
  // Hash of the joint state at round `start`.
  std::uint64_t certificate = 0;
  friend bool operator==(const Lasso&, const Lasso&) = default;
};

enum class Player { kOne, kTwo };

struct Fault {
  Player player = Player::kOne;
  std::size_t round = 0;
  std::string message;
  // I's letters through the faulting round (including an illegal letter).
  Prefix prefix;
};

struct RunTrace {
  std::vector<Round> rounds;
  std::optional<Lasso> lasso;
  std::optional<Fault> fault;
  // The tree is full, so a repeated joint state certifies the infinite run.
  bool keyed = true;
  // Rounds at which some strategy had no state key (skipped for lassos).
  std::size_t unkeyed_rounds = 0;
  std::string player_one;
  std::string player_two;
  Counters counters_one;
  Counters counters_two;

  Prefix letters() const;
  // The infinite branch certified by the lasso.
  std::optional<EventuallyPeriodicBranch> branch() const;
};

// The payoff function f. Automaton payoffs also feed u's state into the
// joint state.
class Payoff {
 public:
  using Evaluator = std::function<Dyadic(const EventuallyPeriodicBranch&)>;

  static Payoff from_automaton(NodeAutomaton u);
  static Payoff from_function(Evaluator f, std::string name);

  Dyadic value(const EventuallyPeriodicBranch& x) const { return f_(x); }
  const std::optional<NodeAutomaton>& automaton() const { return u_; }
  const std::string& name() const { return name_; }

 private:
  Payoff() = default;
  Evaluator f_;
  std::optional<NodeAutomaton> u_;
  std::string name_;
};

struct PlayOptions {
  std::size_t horizon = 1000;
  // Stop `extra_periods` periods after the first lasso (exact verdicts).
  bool stop_at_lasso = false;
  std::size_t extra_periods = 0;
  std::optional<TreeSpec> tree;
  // u's state joins the joint key when set.
  const NodeAutomaton* payoff_automaton = nullptr;
};

inline constexpr std::size_t kMaxRounds = 1'000'000;

// Plays clones of the given strategies.
RunTrace play(const GameKind& kind, const PlayerOneStrategy& one,
              const PlayerTwoStrategy& two, const PlayOptions& options);
// Plays the given instances, leaving them in their final state.
RunTrace play_in_place(const GameKind& kind, PlayerOneStrategy& one,
                       PlayerTwoStrategy& two, const PlayOptions& options);

enum class Outcome { kWinTwo, kWinOne, kUndecided };
std::string to_string(Outcome o);

struct Witness {
  Dyadic f;
  Dyadic limsup_v;
  std::optional<Dyadic> liminf_w;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Diagnostics {
  std::size_t horizon = 0;
  std::size_t window_start = 0;
  Dyadic max_v;
  Dyadic min_v;
  std::optional<Dyadic> max_w;
  std::optional<Dyadic> min_w;
  std::string reason;
  Counters counters_one;
  Counters counters_two;
};

struct Verdict {
  Outcome outcome = Outcome::kUndecided;
  std::optional<Witness> witness;
  std::optional<Lasso> lasso;
  std::optional<Diagnostics> diagnostics;
  std::optional<Fault> fault;

  bool exact() const { return witness.has_value(); }
};

// Plays up to `cap` rounds, stopping at the first joint-state repetition,
// and decides the run from the repeating segment.
Verdict exact_verdict(const GameKind& kind, const PlayerOneStrategy& one,
                      const PlayerTwoStrategy& two, const Payoff& payoff,
                      std::size_t cap, std::optional<TreeSpec> tree = {});

class CertificateMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Recomputes the verdict from a lassoed trace alone. Throws
// CertificateMismatch when the recorded rounds past the lasso start do not
// repeat with the recorded period.
Verdict check_win(const RunTrace& trace, const Payoff& payoff,
                  const GameKind& kind);

// Verdict of a trace without a usable lasso: undecided with tail-window
// statistics over the last half of the trace.
Verdict undecided_verdict(const RunTrace& trace, std::string reason);

// CSV columns t,x_t,v_t,w_t (w_t empty outside Gamma').
void write_trace_csv(const RunTrace& trace, std::ostream& out);
// {"lasso": {...} | null, "verdict": {...}, ...}
std::string trace_sidecar_json(const RunTrace& trace, const Verdict& verdict,
                               const GameKind& kind);
std::string verdict_json(const Verdict& verdict);
std::string fault_json(const Fault& fault);

}  // namespace limsup

#endif  // LIMSUP_GAMES_H_
