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

#ifndef LIMSUP_STRATEGIES_H_
#define LIMSUP_STRATEGIES_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "limsup/automaton.h"
#include "limsup/games.h"
#include "limsup/random.h"
#include "limsup/tree.h"

namespace limsup {

// ---------------------------------------------------------------------------
// Player II

class ConstantTwo final : public PlayerTwoStrategy {
 public:
  explicit ConstantTwo(PlayerTwoMove move) : move_(std::move(move)) {}
  PlayerTwoPtr clone() const override {
    return std::make_unique<ConstantTwo>(*this);
  }
  PlayerTwoMove move(Letter) override { return move_; }
  std::optional<StateKey> state_key() const override { return StateKey{}; }
  std::string name() const override;

 private:
  PlayerTwoMove move_;
};

// v_t = u(x_0..x_t).
class FromAutomatonTwo final : public PlayerTwoStrategy {
 public:
  explicit FromAutomatonTwo(NodeAutomaton u)
      : u_(std::move(u)), state_(u_.initial()) {}
  PlayerTwoPtr clone() const override {
    return std::make_unique<FromAutomatonTwo>(*this);
  }
  PlayerTwoMove move(Letter x) override;
  std::optional<StateKey> state_key() const override {
    return StateKey{static_cast<std::int64_t>(state_)};
  }
  std::string name() const override { return "from_u"; }
  const NodeAutomaton& automaton() const { return u_; }

 private:
  NodeAutomaton u_;
  std::size_t state_;
};

PlayerTwoPtr strategy_ii_from_u(const NodeAutomaton& u);

// (v_t, w_t) = (sf's value, -(sg's value)) on the shared letters.
class PairTwo final : public PlayerTwoStrategy {
 public:
  PairTwo(PlayerTwoPtr sf, PlayerTwoPtr sg)
      : sf_(std::move(sf)), sg_(std::move(sg)) {}
  PairTwo(const PairTwo& other)
      : sf_(other.sf_->clone()), sg_(other.sg_->clone()) {}
  PlayerTwoPtr clone() const override {
    return std::make_unique<PairTwo>(*this);
  }
  PlayerTwoMove move(Letter x) override;
  std::optional<StateKey> state_key() const override;
  bool unbounded() const override {
    return sf_->unbounded() || sg_->unbounded();
  }
  std::string name() const override;

 private:
  PlayerTwoPtr sf_;
  PlayerTwoPtr sg_;
};

PlayerTwoPtr pair_strategies(const PlayerTwoStrategy& sf,
                             const PlayerTwoStrategy& sg);

// Replays a fixed cycle of moves, ignoring I.
class CyclicTwo final : public PlayerTwoStrategy {
 public:
  explicit CyclicTwo(std::vector<PlayerTwoMove> moves);
  PlayerTwoPtr clone() const override {
    return std::make_unique<CyclicTwo>(*this);
  }
  PlayerTwoMove move(Letter) override;
  std::optional<StateKey> state_key() const override {
    return StateKey{static_cast<std::int64_t>(index_)};
  }
  std::string name() const override { return "cyclic"; }

 private:
  std::vector<PlayerTwoMove> moves_;
  std::size_t index_ = 0;
};

// Table-driven II over letter classes 0..letters-1 plus a default class.
class FsmTwo final : public PlayerTwoStrategy {
 public:
  struct Edge {
    std::size_t next = 0;
    PlayerTwoMove move;
  };
  FsmTwo(std::size_t states, std::size_t letters, std::vector<Edge> table,
         std::string label = "fsm");
  PlayerTwoPtr clone() const override { return std::make_unique<FsmTwo>(*this); }
  PlayerTwoMove move(Letter x) override;
  std::optional<StateKey> state_key() const override {
    return StateKey{static_cast<std::int64_t>(state_)};
  }
  std::string name() const override { return label_; }

  std::size_t num_states() const { return states_; }

 private:
  std::size_t states_;
  std::size_t letters_;
  std::vector<Edge> table_;
  std::string label_;
  std::size_t state_ = 0;
};

// Random II with at most `max_states` states emitting values from `values`
// (pairs of values when `pairs`).
FsmTwo random_fsm_two(Rng& rng, std::size_t max_states,
                      const std::vector<Dyadic>& values, bool pairs,
                      std::size_t letters = 2);

// u(s) = the value II plays after I has fed it the letters of s.
class StrategyInducedFunction {
 public:
  explicit StrategyInducedFunction(const PlayerTwoStrategy& s)
      : strategy_(s.clone()) {}
  // Requires a nonempty prefix.
  Dyadic operator()(std::span<const Letter> s) const;

 private:
  PlayerTwoPtr strategy_;
};

StrategyInducedFunction u_from_strategy_ii(const PlayerTwoStrategy& s);

// ---------------------------------------------------------------------------
// Player I

class ConstantOne final : public PlayerOneStrategy {
 public:
  explicit ConstantOne(Letter a) : a_(a) {}
  PlayerOnePtr clone() const override {
    return std::make_unique<ConstantOne>(*this);
  }
  Letter move(const std::optional<PlayerTwoMove>&) override { return a_; }
  std::optional<StateKey> state_key() const override { return StateKey{}; }
  std::string name() const override;

 private:
  Letter a_;
};

// Plays the letters of a fixed branch, ignoring II.
class BranchOne final : public PlayerOneStrategy {
 public:
  explicit BranchOne(EventuallyPeriodicBranch x) : x_(std::move(x)) {}
  PlayerOnePtr clone() const override {
    return std::make_unique<BranchOne>(*this);
  }
  Letter move(const std::optional<PlayerTwoMove>&) override;
  std::optional<StateKey> state_key() const override;
  std::string name() const override { return "branch " + x_.to_string(); }

 private:
  EventuallyPeriodicBranch x_;
  std::size_t pos_ = 0;
};

// Table-driven I. The first letter is fixed; afterwards II's v is classified
// by its index in `values` (other values share a default class).
class FsmOne final : public PlayerOneStrategy {
 public:
  struct Edge {
    std::size_t next = 0;
    Letter letter = 0;
  };
  FsmOne(std::size_t states, std::vector<Dyadic> values, Letter first_letter,
         std::vector<Edge> table, std::string label = "fsm");
  PlayerOnePtr clone() const override { return std::make_unique<FsmOne>(*this); }
  Letter move(const std::optional<PlayerTwoMove>& last) override;
  std::optional<StateKey> state_key() const override {
    return StateKey{static_cast<std::int64_t>(state_)};
  }
  std::string name() const override { return label_; }

 private:
  std::size_t states_;
  std::vector<Dyadic> values_;
  Letter first_;
  std::vector<Edge> table_;
  std::string label_;
  std::size_t state_ = 0;
};

// Random I with at most `max_states` states over letters {0..arity-1}.
FsmOne random_fsm_one(Rng& rng, std::size_t max_states,
                      const std::vector<Dyadic>& values, std::size_t arity = 2);

// x_0 = 0, x_{n+1} = v_n; II must play naturals.
class CopycatOne final : public PlayerOneStrategy {
 public:
  PlayerOnePtr clone() const override {
    return std::make_unique<CopycatOne>(*this);
  }
  Letter move(const std::optional<PlayerTwoMove>& last) override;
  std::optional<StateKey> state_key() const override { return StateKey{}; }
  std::string name() const override { return "copycat"; }
};

PlayerOnePtr copycat_strategy();

// Enumeration q of the dyadics by stages: stage 0 is {0}; stage h >= 1 adds
// the points of the 2^-h grid in [-h, h] not yet listed, by increasing
// absolute value, positive before negative.
class DyadicSpiral {
 public:
  explicit DyadicSpiral(std::size_t max_stage = 8);

  std::size_t size() const { return points_.size(); }
  const Dyadic& operator[](std::size_t i) const { return points_[i]; }
  // Least index i with |v - q(i)| <= tolerance.
  std::optional<std::size_t> least_within(const Dyadic& v,
                                          const Dyadic& tolerance) const;
  std::optional<std::size_t> index_of(const Dyadic& v) const;
  std::size_t max_stage() const { return max_stage_; }

 private:
  std::size_t max_stage_;
  std::vector<Dyadic> points_;
  std::unordered_map<Dyadic, std::size_t> index_;
  Dyadic finest_;
};

// x_0 = 0, x_{n+1} = least index with |v_n - q(x_{n+1})| <= 2^-n.
class ApproxCopycatOne final : public PlayerOneStrategy {
 public:
  explicit ApproxCopycatOne(std::shared_ptr<const DyadicSpiral> q)
      : q_(std::move(q)) {}
  PlayerOnePtr clone() const override {
    return std::make_unique<ApproxCopycatOne>(*this);
  }
  Letter move(const std::optional<PlayerTwoMove>& last) override;
  // The tolerance shrinks every round.
  std::optional<StateKey> state_key() const override { return std::nullopt; }
  bool unbounded() const override { return true; }
  std::string name() const override { return "approx_copycat"; }
  Counters counters() const override;
  const DyadicSpiral& spiral() const { return *q_; }

 private:
  std::shared_ptr<const DyadicSpiral> q_;
  std::size_t round_ = 0;
  std::size_t max_index_ = 0;
};

PlayerOnePtr approx_copycat(std::shared_ptr<const DyadicSpiral> q);

// Meagre-dense hypothesis on a closed set C: Y = C n {f >= r} is covered by
// closed nowhere dense sets S_0, S_1, ...
struct MeagerDenseInstance {
  std::function<bool(std::span<const Letter>)> cantor_member;
  // O(s) n S_m is empty.
  std::function<bool(std::span<const Letter>, std::size_t)> s_disjoint;
  // A branch in (O(s) n Y) \ S_m.
  std::function<EventuallyPeriodicBranch(std::span<const Letter>, std::size_t)>
      pick_y;
  std::function<Dyadic(const EventuallyPeriodicBranch&)> f;
  Dyadic level_r;
  std::uint64_t arity = 2;
  std::string name;
};

// Full binary tree, Y = eventually-zero branches, S_m = {x : x_t = 0 for
// t > m}, r = 1, f = indicator of Y.
MeagerDenseInstance eventually_zero_instance();

struct SwitchEvent {
  std::size_t round = 0;      // stage n whose v_n triggered the switch
  std::size_t m_before = 0;   // m_n
  Dyadic v;
  Prefix prefix;              // x_0..x_n
  EventuallyPeriodicBranch target;  // y(n+1)
};

class MeagerDenseOne final : public PlayerOneStrategy {
 public:
  explicit MeagerDenseOne(std::shared_ptr<const MeagerDenseInstance> inst)
      : inst_(std::move(inst)) {}
  PlayerOnePtr clone() const override {
    return std::make_unique<MeagerDenseOne>(*this);
  }
  Letter move(const std::optional<PlayerTwoMove>& last) override;
  std::optional<StateKey> state_key() const override;
  bool unbounded() const override { return true; }
  std::string name() const override { return "meager_dense"; }
  Counters counters() const override;

  std::size_t m() const { return m_; }
  const std::optional<EventuallyPeriodicBranch>& target() const {
    return target_;
  }
  const std::vector<SwitchEvent>& switches() const { return switches_; }
  const Prefix& prefix() const { return prefix_; }
  // Stages at which (x_0..x_n) differed from (y(n)_0..y(n)_n).
  std::size_t prefix_violations() const { return prefix_violations_; }

 private:
  EventuallyPeriodicBranch checked_pick(std::span<const Letter> s,
                                        std::size_t m) const;

  std::shared_ptr<const MeagerDenseInstance> inst_;
  std::optional<EventuallyPeriodicBranch> target_;
  std::size_t m_ = 0;
  Prefix prefix_;
  bool disjoint_ = false;  // O(prefix) n S_m is empty
  std::vector<SwitchEvent> switches_;
  std::size_t prefix_violations_ = 0;
};

PlayerOnePtr strategy_i_meager_dense(
    std::shared_ptr<const MeagerDenseInstance> inst);

// A closed set C on which f's oscillation is at least 5 * epsilon.
struct OscillationInstance {
  std::function<bool(std::span<const Letter>)> closed_member;
  std::function<Dyadic(std::span<const Letter>)> sup_f;
  std::function<Dyadic(std::span<const Letter>)> inf_f;
  // Branches through s in C with f > sup_f(s) - epsilon, resp.
  // f < inf_f(s) + epsilon.
  std::function<EventuallyPeriodicBranch(std::span<const Letter>)> pick_high;
  std::function<EventuallyPeriodicBranch(std::span<const Letter>)> pick_low;
  std::function<Dyadic(const EventuallyPeriodicBranch&)> f;
  Dyadic epsilon;
  std::uint64_t arity = 2;
  std::string name;
};

// Full binary tree, f = indicator of eventually-zero, epsilon = 1/8,
// pick_high(s) = s 0^w, pick_low(s) = s (01)^w.
OscillationInstance indicator_oscillation_instance();

struct Trigger {
  std::size_t k = 0;      // phase that ended
  std::size_t round = 0;  // n_{k+1}
  Dyadic v;
  Dyadic w;
  Dyadic target_value;    // f(x(k))
};

class OscillationOne final : public PlayerOneStrategy {
 public:
  explicit OscillationOne(std::shared_ptr<const OscillationInstance> inst)
      : inst_(std::move(inst)) {}
  PlayerOnePtr clone() const override {
    return std::make_unique<OscillationOne>(*this);
  }
  Letter move(const std::optional<PlayerTwoMove>& last) override;
  std::optional<StateKey> state_key() const override;
  bool unbounded() const override { return true; }
  std::string name() const override { return "oscillation"; }
  Counters counters() const override;

  std::size_t phase() const { return k_; }
  const std::vector<Trigger>& triggers() const { return triggers_; }
  const std::optional<EventuallyPeriodicBranch>& target() const {
    return target_;
  }

 private:
  void start_phase(std::span<const Letter> s);

  std::shared_ptr<const OscillationInstance> inst_;
  std::size_t k_ = 0;
  std::size_t phase_start_ = 0;  // n_k
  std::optional<EventuallyPeriodicBranch> target_;
  Dyadic target_value_;
  Prefix prefix_;
  std::vector<Trigger> triggers_;
};

PlayerOnePtr strategy_i_oscillation(
    std::shared_ptr<const OscillationInstance> inst);

// v_{n_{k+1}} >= w_{n_{k+2}} + epsilon for every completed even k, restricted
// to chains whose first trigger is at or after `from_round`.
struct OscillationBound {
  std::size_t completed = 0;
  std::size_t violations = 0;
  std::optional<Dyadic> min_gap;  // min of v_{n_{k+1}} - w_{n_{k+2}}
};
OscillationBound check_oscillation_bound(const std::vector<Trigger>& triggers,
                                         const Dyadic& epsilon,
                                         std::size_t from_round = 0);

// sigma(..., v_n) = sigma_R(..., F_n(v_n)) with F_n(y) = R.near(y, ~1/(n+2)).
class LiftedOne final : public PlayerOneStrategy {
 public:
  LiftedOne(PlayerOnePtr inner, ValueSet r)
      : inner_(std::move(inner)), r_(std::move(r)) {}
  LiftedOne(const LiftedOne& other)
      : inner_(other.inner_->clone()),
        r_(other.r_),
        round_(other.round_),
        rounded_(other.rounded_) {}
  PlayerOnePtr clone() const override {
    return std::make_unique<LiftedOne>(*this);
  }
  Letter move(const std::optional<PlayerTwoMove>& last) override;
  // near() is an exact nearest-point map, so F_n does not depend on n.
  std::optional<StateKey> state_key() const override {
    return inner_->state_key();
  }
  bool unbounded() const override { return inner_->unbounded(); }
  std::string name() const override { return "lift(" + inner_->name() + ")"; }
  // F_0(v_0), F_1(v_1), ... as fed to the inner strategy.
  const std::vector<Dyadic>& rounded() const { return rounded_; }

 private:
  PlayerOnePtr inner_;
  ValueSet r_;
  std::size_t round_ = 0;
  std::vector<Dyadic> rounded_;
};

// A tolerance 2^-k <= 1/(n+2), used for F_n.
Dyadic lift_tolerance(std::size_t n);

PlayerOnePtr lift_strategy(const PlayerOneStrategy& s_r, const ValueSet& r);

// sigma(..., v_n) = sigma_0(..., i^-1(v_n)) for an order-preserving i given
// on a finite domain.
class RelabeledOne final : public PlayerOneStrategy {
 public:
  // `mapping` lists (d, i(d)); both coordinates must strictly increase.
  RelabeledOne(PlayerOnePtr inner, std::vector<std::pair<Dyadic, Dyadic>> mapping);
  RelabeledOne(const RelabeledOne& other)
      : inner_(other.inner_->clone()),
        mapping_(other.mapping_),
        inverse_(other.inverse_) {}
  PlayerOnePtr clone() const override {
    return std::make_unique<RelabeledOne>(*this);
  }
  Letter move(const std::optional<PlayerTwoMove>& last) override;
  std::optional<StateKey> state_key() const override {
    return inner_->state_key();
  }
  bool unbounded() const override { return inner_->unbounded(); }
  std::string name() const override {
    return "relabel(" + inner_->name() + ")";
  }
  std::optional<Dyadic> inverse(const Dyadic& v) const;

 private:
  PlayerOnePtr inner_;
  std::vector<std::pair<Dyadic, Dyadic>> mapping_;
  std::unordered_map<Dyadic, Dyadic> inverse_;
};

PlayerOnePtr relabel_strategy(const PlayerOneStrategy& s0,
                              std::vector<std::pair<Dyadic, Dyadic>> mapping);

}  // namespace limsup

#endif  // LIMSUP_STRATEGIES_H_
