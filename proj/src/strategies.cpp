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

#include "limsup/strategies.h"

#include <algorithm>
#include <stdexcept>

namespace limsup {
namespace {

std::string move_to_string(const PlayerTwoMove& m) {
  if (!m.w) return m.v.to_string();
  return "(" + m.v.to_string() + "," + m.w->to_string() + ")";
}

// Position within an eventually periodic target, folded into the cycle.
std::int64_t folded_position(const EventuallyPeriodicBranch& x,
                             std::size_t pos) {
  const std::size_t stem = x.stem().size();
  if (pos < stem) return static_cast<std::int64_t>(pos);
  return static_cast<std::int64_t>(stem + (pos - stem) % x.cycle().size());
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& from) {
  return from[uniform_int(rng, 0, from.size() - 1)];
}

void require_extends(const EventuallyPeriodicBranch& x,
                     std::span<const Letter> s, const char* who) {
  const Prefix head = x.take(s.size());
  if (!std::equal(head.begin(), head.end(), s.begin(), s.end())) {
    throw StrategyFault(std::string(who) + " returned " + x.to_string() +
                        ", which does not extend [" + prefix_to_string(s) +
                        "]");
  }
}

// d < 2^-m without forming 2^-m, which leaves int64 range for large m.
bool below_pow2_neg(const Dyadic& d, std::size_t m) {
  if (d <= Dyadic(0)) return true;
  const std::size_t e = d.exponent();
  if (e <= m) return false;
  if (e - m >= 63) return true;
  return d.numerator() < (std::int64_t{1} << (e - m));
}

}  // namespace

// ---------------------------------------------------------------------------
// Player II

std::string ConstantTwo::name() const {
  return "constant " + move_to_string(move_);
}

PlayerTwoMove FromAutomatonTwo::move(Letter x) {
  const auto& tr = u_.step(state_, x);
  state_ = tr.next;
  return PlayerTwoMove{tr.output, std::nullopt};
}

PlayerTwoPtr strategy_ii_from_u(const NodeAutomaton& u) {
  return std::make_unique<FromAutomatonTwo>(u);
}

PlayerTwoMove PairTwo::move(Letter x) {
  const Dyadic v = sf_->move(x).v;
  const Dyadic g = sg_->move(x).v;
  return PlayerTwoMove{v, -g};
}

std::optional<StateKey> PairTwo::state_key() const {
  auto a = sf_->state_key();
  auto b = sg_->state_key();
  if (!a || !b) return std::nullopt;
  StateKey key{static_cast<std::int64_t>(a->size())};
  key.insert(key.end(), a->begin(), a->end());
  key.insert(key.end(), b->begin(), b->end());
  return key;
}

std::string PairTwo::name() const {
  return "pair(" + sf_->name() + ", -" + sg_->name() + ")";
}

PlayerTwoPtr pair_strategies(const PlayerTwoStrategy& sf,
                             const PlayerTwoStrategy& sg) {
  return std::make_unique<PairTwo>(sf.clone(), sg.clone());
}

CyclicTwo::CyclicTwo(std::vector<PlayerTwoMove> moves)
    : moves_(std::move(moves)) {
  if (moves_.empty()) throw std::invalid_argument("cyclic: no moves");
}

PlayerTwoMove CyclicTwo::move(Letter) {
  const PlayerTwoMove m = moves_[index_];
  index_ = (index_ + 1) % moves_.size();
  return m;
}

FsmTwo::FsmTwo(std::size_t states, std::size_t letters,
               std::vector<Edge> table, std::string label)
    : states_(states),
      letters_(letters),
      table_(std::move(table)),
      label_(std::move(label)) {
  if (states_ == 0) throw std::invalid_argument("fsm: no states");
  if (table_.size() != states_ * (letters_ + 1)) {
    throw std::invalid_argument("fsm: table has the wrong size");
  }
  for (const Edge& e : table_) {
    if (e.next >= states_) throw std::invalid_argument("fsm: bad next state");
  }
}

PlayerTwoMove FsmTwo::move(Letter x) {
  const std::size_t cls = x < letters_ ? static_cast<std::size_t>(x) : letters_;
  const Edge& e = table_[state_ * (letters_ + 1) + cls];
  state_ = e.next;
  return e.move;
}

FsmTwo random_fsm_two(Rng& rng, std::size_t max_states,
                      const std::vector<Dyadic>& values, bool pairs,
                      std::size_t letters) {
  if (max_states == 0 || values.empty()) {
    throw std::invalid_argument("random_fsm_two: empty shape");
  }
  const std::size_t states = uniform_int(rng, 1, max_states);
  std::vector<FsmTwo::Edge> table;
  table.reserve(states * (letters + 1));
  for (std::size_t i = 0; i < states * (letters + 1); ++i) {
    FsmTwo::Edge e;
    e.next = uniform_int(rng, 0, states - 1);
    e.move.v = pick(rng, values);
    if (pairs) e.move.w = pick(rng, values);
    table.push_back(e);
  }
  return FsmTwo(states, letters, std::move(table),
                "fsm" + std::to_string(states));
}

Dyadic StrategyInducedFunction::operator()(std::span<const Letter> s) const {
  if (s.empty()) {
    throw std::invalid_argument("strategy-induced u needs a nonempty prefix");
  }
  PlayerTwoPtr run = strategy_->clone();
  Dyadic v;
  for (Letter a : s) v = run->move(a).v;
  return v;
}

StrategyInducedFunction u_from_strategy_ii(const PlayerTwoStrategy& s) {
  return StrategyInducedFunction(s);
}

// ---------------------------------------------------------------------------
// Player I

std::string ConstantOne::name() const {
  return "constant " + std::to_string(a_);
}

Letter BranchOne::move(const std::optional<PlayerTwoMove>&) {
  return x_.letter_at(pos_++);
}

std::optional<StateKey> BranchOne::state_key() const {
  return StateKey{folded_position(x_, pos_)};
}

FsmOne::FsmOne(std::size_t states, std::vector<Dyadic> values,
               Letter first_letter, std::vector<Edge> table, std::string label)
    : states_(states),
      values_(std::move(values)),
      first_(first_letter),
      table_(std::move(table)),
      label_(std::move(label)) {
  if (states_ == 0) throw std::invalid_argument("fsm: no states");
  if (table_.size() != states_ * (values_.size() + 1)) {
    throw std::invalid_argument("fsm: table has the wrong size");
  }
  for (const Edge& e : table_) {
    if (e.next >= states_) throw std::invalid_argument("fsm: bad next state");
  }
}

Letter FsmOne::move(const std::optional<PlayerTwoMove>& last) {
  if (!last) return first_;
  const auto it = std::find(values_.begin(), values_.end(), last->v);
  const std::size_t cls = static_cast<std::size_t>(it - values_.begin());
  const Edge& e = table_[state_ * (values_.size() + 1) + cls];
  state_ = e.next;
  return e.letter;
}

FsmOne random_fsm_one(Rng& rng, std::size_t max_states,
                      const std::vector<Dyadic>& values, std::size_t arity) {
  if (max_states == 0 || arity == 0) {
    throw std::invalid_argument("random_fsm_one: empty shape");
  }
  const std::size_t states = uniform_int(rng, 1, max_states);
  const Letter first = uniform_int(rng, 0, arity - 1);
  std::vector<FsmOne::Edge> table;
  for (std::size_t i = 0; i < states * (values.size() + 1); ++i) {
    FsmOne::Edge e;
    e.next = uniform_int(rng, 0, states - 1);
    e.letter = uniform_int(rng, 0, arity - 1);
    table.push_back(e);
  }
  return FsmOne(states, values, first, std::move(table),
                "fsm" + std::to_string(states));
}

Letter CopycatOne::move(const std::optional<PlayerTwoMove>& last) {
  if (!last) return 0;
  if (!last->v.is_integer() || last->v.numerator() < 0) {
    throw StrategyFault("copycat: II played " + last->v.to_string() +
                        ", which is not a natural number");
  }
  return static_cast<Letter>(last->v.numerator());
}

PlayerOnePtr copycat_strategy() { return std::make_unique<CopycatOne>(); }

DyadicSpiral::DyadicSpiral(std::size_t max_stage)
    : max_stage_(max_stage),
      finest_(Dyadic::pow2_neg(static_cast<std::uint32_t>(max_stage))) {
  if (max_stage > 20) throw std::invalid_argument("spiral: stage too large");
  points_.push_back(Dyadic(0));
  index_.emplace(Dyadic(0), 0);
  for (std::uint32_t h = 1; h <= max_stage; ++h) {
    const std::int64_t reach = static_cast<std::int64_t>(h) << h;
    std::vector<Dyadic> fresh;
    for (std::int64_t z = -reach; z <= reach; ++z) {
      Dyadic d(z, h);
      if (!index_.contains(d)) fresh.push_back(d);
    }
    std::sort(fresh.begin(), fresh.end(), [](const Dyadic& a, const Dyadic& b) {
      if (a.abs() != b.abs()) return a.abs() < b.abs();
      return b < a;
    });
    for (const Dyadic& d : fresh) {
      index_.emplace(d, points_.size());
      points_.push_back(d);
    }
  }
}

std::optional<std::size_t> DyadicSpiral::index_of(const Dyadic& v) const {
  const auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> DyadicSpiral::least_within(
    const Dyadic& v, const Dyadic& tolerance) const {
  if (tolerance >= finest_) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if ((v - points_[i]).abs() <= tolerance) return i;
    }
    return std::nullopt;
  }
  // Closer than the finest spacing: only the grid neighbours of v qualify.
  // Avoids forming v +- tolerance, which can leave the int64 range.
  const auto exp = static_cast<std::uint32_t>(max_stage_);
  const Dyadic up = v.ceil_to_grid(exp);
  std::optional<std::size_t> best;
  for (const Dyadic& g : {up - finest_, up}) {
    if ((v - g).abs() > tolerance) continue;
    if (auto i = index_of(g); i && (!best || *i < *best)) best = i;
  }
  return best;
}

Letter ApproxCopycatOne::move(const std::optional<PlayerTwoMove>& last) {
  if (!last) {
    round_ = 0;
    return 0;
  }
  const std::size_t n = round_++;
  // Gaps between dyadics of exponent <= 62 are 0 or at least 2^-62, so past
  // that only an exact match is within 2^-n.
  const auto i = n > 62 ? q_->index_of(last->v)
                        : q_->least_within(last->v, Dyadic::pow2_neg(
                                                        static_cast<std::uint32_t>(n)));
  if (!i) {
    throw StrategyFault("approx_copycat: no enumerated dyadic within 2^-" +
                        std::to_string(n) + " of " + last->v.to_string());
  }
  max_index_ = std::max(max_index_, *i);
  return *i;
}

Counters ApproxCopycatOne::counters() const {
  return {{"max_index", std::to_string(max_index_)},
          {"spiral_size", std::to_string(q_->size())}};
}

PlayerOnePtr approx_copycat(std::shared_ptr<const DyadicSpiral> q) {
  return std::make_unique<ApproxCopycatOne>(std::move(q));
}

// ---------------------------------------------------------------------------
// Meagre-dense strategy

MeagerDenseInstance eventually_zero_instance() {
  MeagerDenseInstance inst;
  inst.cantor_member = [](std::span<const Letter> s) {
    return std::all_of(s.begin(), s.end(), [](Letter a) { return a < 2; });
  };
  inst.s_disjoint = [](std::span<const Letter> s, std::size_t m) {
    for (std::size_t t = m + 1; t < s.size(); ++t) {
      if (s[t] == 1) return true;
    }
    return false;
  };
  inst.pick_y = [](std::span<const Letter> s, std::size_t m) {
    Prefix stem(s.begin(), s.end());
    stem.resize(std::max(s.size(), m + 1), 0);
    stem.push_back(1);
    return EventuallyPeriodicBranch(std::move(stem), Prefix{0});
  };
  inst.f = [](const EventuallyPeriodicBranch& x) {
    const auto& c = x.cycle();
    return Dyadic(std::all_of(c.begin(), c.end(), [](Letter a) {
      return a == 0;
    }) ? 1 : 0);
  };
  inst.level_r = Dyadic(1);
  inst.arity = 2;
  inst.name = "eventually_zero";
  return inst;
}

EventuallyPeriodicBranch MeagerDenseOne::checked_pick(
    std::span<const Letter> s, std::size_t m) const {
  EventuallyPeriodicBranch y = inst_->pick_y(s, m);
  require_extends(y, s, "pick_y");
  if (y.cycle().empty()) throw StrategyFault("pick_y: empty cycle");
  if (inst_->f(y) < inst_->level_r) {
    throw StrategyFault("pick_y: f(" + y.to_string() + ") is below r");
  }
  const std::size_t depth = y.stem().size() + y.cycle().size() + 16;
  const Prefix head = y.take(depth);
  bool avoids = false;
  for (std::size_t d = 0; d <= depth; ++d) {
    const auto p = std::span<const Letter>(head).first(d);
    if (!inst_->cantor_member(p)) {
      throw StrategyFault("pick_y: " + y.to_string() + " leaves C");
    }
    if (!avoids && inst_->s_disjoint(p, m)) avoids = true;
  }
  if (!avoids) {
    throw StrategyFault("pick_y: " + y.to_string() + " is not separated from S_" +
                        std::to_string(m));
  }
  return y;
}

Letter MeagerDenseOne::move(const std::optional<PlayerTwoMove>& last) {
  const std::size_t pos = prefix_.size();
  if (pos == 0) {
    m_ = 0;
    target_ = checked_pick(prefix_, 0);
  } else if (last) {
    // Switch: II's value is close to r while the play is already clear of
    // S_m.
    if (disjoint_ && below_pow2_neg(inst_->level_r - last->v, m_)) {
      target_ = checked_pick(prefix_, m_ + 1);
      switches_.push_back(SwitchEvent{pos - 1, m_, last->v, prefix_, *target_});
      ++m_;
      disjoint_ = inst_->s_disjoint(prefix_, m_);
    }
  }
  const Letter a = target_->letter_at(pos);
  prefix_.push_back(a);
  if (!inst_->cantor_member(prefix_)) {
    throw StrategyFault("meager_dense: play left C at [" +
                        prefix_to_string(prefix_) + "]");
  }
  if (target_->take(prefix_.size()) != prefix_) ++prefix_violations_;
  if (!disjoint_) disjoint_ = inst_->s_disjoint(prefix_, m_);
  return a;
}

std::optional<StateKey> MeagerDenseOne::state_key() const {
  if (!target_) return StateKey{-1};
  // Until the play is clear of S_m the behavior still depends on the exact
  // position, which never repeats.
  if (!disjoint_) return std::nullopt;
  return StateKey{static_cast<std::int64_t>(m_),
                  folded_position(*target_, prefix_.size())};
}

Counters MeagerDenseOne::counters() const {
  Counters c{{"switches", std::to_string(switches_.size())},
             {"m", std::to_string(m_)},
             {"prefix_violations", std::to_string(prefix_violations_)}};
  if (target_) c["target"] = target_->to_string();
  if (!switches_.empty()) {
    c["last_switch_round"] = std::to_string(switches_.back().round);
  }
  return c;
}

PlayerOnePtr strategy_i_meager_dense(
    std::shared_ptr<const MeagerDenseInstance> inst) {
  return std::make_unique<MeagerDenseOne>(std::move(inst));
}

// ---------------------------------------------------------------------------
// Oscillation strategy

OscillationInstance indicator_oscillation_instance() {
  OscillationInstance inst;
  inst.closed_member = [](std::span<const Letter> s) {
    return std::all_of(s.begin(), s.end(), [](Letter a) { return a < 2; });
  };
  // Both values occur in every cylinder.
  inst.sup_f = [](std::span<const Letter>) { return Dyadic(1); };
  inst.inf_f = [](std::span<const Letter>) { return Dyadic(0); };
  inst.pick_high = [](std::span<const Letter> s) {
    return EventuallyPeriodicBranch(Prefix(s.begin(), s.end()), Prefix{0});
  };
  inst.pick_low = [](std::span<const Letter> s) {
    return EventuallyPeriodicBranch(Prefix(s.begin(), s.end()), Prefix{0, 1});
  };
  inst.f = eventually_zero_instance().f;
  inst.epsilon = Dyadic(1, 3);
  inst.arity = 2;
  inst.name = "indicator";
  return inst;
}

void OscillationOne::start_phase(std::span<const Letter> s) {
  const bool high = k_ % 2 == 0;
  EventuallyPeriodicBranch x =
      high ? inst_->pick_high(s) : inst_->pick_low(s);
  const char* who = high ? "pick_high" : "pick_low";
  require_extends(x, s, who);
  if (x.cycle().empty()) throw StrategyFault(std::string(who) + ": empty cycle");
  const Dyadic fx = inst_->f(x);
  if (high ? !(fx > inst_->sup_f(s) - inst_->epsilon)
           : !(fx < inst_->inf_f(s) + inst_->epsilon)) {
    throw StrategyFault(std::string(who) + ": f(" + x.to_string() + ") = " +
                        fx.to_string() + " misses the epsilon window");
  }
  const Prefix head = x.take(x.stem().size() + x.cycle().size());
  for (std::size_t d = s.size(); d <= head.size(); ++d) {
    if (!inst_->closed_member(std::span<const Letter>(head).first(d))) {
      throw StrategyFault(std::string(who) + ": " + x.to_string() +
                          " leaves the closed set");
    }
  }
  target_ = std::move(x);
  target_value_ = fx;
}

Letter OscillationOne::move(const std::optional<PlayerTwoMove>& last) {
  const std::size_t pos = prefix_.size();
  if (pos == 0) {
    k_ = 0;
    phase_start_ = 0;
    start_phase(prefix_);
  } else if (last) {
    const std::size_t n = pos - 1;
    if (n > phase_start_) {
      bool fire = false;
      if (k_ % 2 == 0) {
        fire = (last->v - target_value_).abs() < inst_->epsilon;
      } else {
        if (!last->w) throw StrategyFault("oscillation: II played no w");
        fire = (*last->w - target_value_).abs() < inst_->epsilon;
      }
      if (fire) {
        triggers_.push_back(Trigger{k_, n, last->v,
                                    last->w.value_or(last->v), target_value_});
        ++k_;
        phase_start_ = n;
        // The new target extends the play through the trigger stage.
        start_phase(prefix_);
      }
    }
  }
  const Letter a = target_->letter_at(pos);
  prefix_.push_back(a);
  return a;
}

std::optional<StateKey> OscillationOne::state_key() const {
  if (!target_) return StateKey{-1};
  const std::size_t pos = prefix_.size();
  const std::int64_t armed = pos >= 1 && pos - 1 > phase_start_ ? 1 : 0;
  return StateKey{static_cast<std::int64_t>(k_), armed,
                  folded_position(*target_, pos)};
}

Counters OscillationOne::counters() const {
  Counters c{{"phase", std::to_string(k_)},
             {"triggers", std::to_string(triggers_.size())}};
  const auto bound = check_oscillation_bound(triggers_, inst_->epsilon);
  c["chain_checks"] = std::to_string(bound.completed);
  c["chain_violations"] = std::to_string(bound.violations);
  if (bound.min_gap) c["min_chain_gap"] = bound.min_gap->to_string();
  return c;
}

PlayerOnePtr strategy_i_oscillation(
    std::shared_ptr<const OscillationInstance> inst) {
  return std::make_unique<OscillationOne>(std::move(inst));
}

OscillationBound check_oscillation_bound(const std::vector<Trigger>& triggers,
                                         const Dyadic& epsilon,
                                         std::size_t from_round) {
  OscillationBound out;
  for (std::size_t i = 0; i + 1 < triggers.size(); ++i) {
    const Trigger& up = triggers[i];
    const Trigger& down = triggers[i + 1];
    if (up.k % 2 != 0 || up.round < from_round) continue;
    const Dyadic gap = up.v - down.w;
    ++out.completed;
    if (gap < epsilon) ++out.violations;
    out.min_gap = out.min_gap ? min(*out.min_gap, gap) : gap;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transfers

Dyadic lift_tolerance(std::size_t n) {
  std::uint32_t k = 0;
  while ((std::uint64_t{1} << k) < n + 2) ++k;
  return Dyadic::pow2_neg(k);
}

Letter LiftedOne::move(const std::optional<PlayerTwoMove>& last) {
  if (!last) return inner_->move(std::nullopt);
  const Dyadic f = r_.near(last->v, lift_tolerance(round_++));
  rounded_.push_back(f);
  return inner_->move(PlayerTwoMove{f, last->w});
}

PlayerOnePtr lift_strategy(const PlayerOneStrategy& s_r, const ValueSet& r) {
  return std::make_unique<LiftedOne>(s_r.clone(), r);
}

RelabeledOne::RelabeledOne(PlayerOnePtr inner,
                           std::vector<std::pair<Dyadic, Dyadic>> mapping)
    : inner_(std::move(inner)), mapping_(std::move(mapping)) {
  for (std::size_t i = 1; i < mapping_.size(); ++i) {
    if (!(mapping_[i - 1].first < mapping_[i].first) ||
        !(mapping_[i - 1].second < mapping_[i].second)) {
      throw std::invalid_argument("relabel: mapping is not strictly increasing");
    }
  }
  for (const auto& [d, image] : mapping_) inverse_.emplace(image, d);
}

std::optional<Dyadic> RelabeledOne::inverse(const Dyadic& v) const {
  const auto it = inverse_.find(v);
  if (it == inverse_.end()) return std::nullopt;
  return it->second;
}

Letter RelabeledOne::move(const std::optional<PlayerTwoMove>& last) {
  if (!last) return inner_->move(std::nullopt);
  const auto d = inverse(last->v);
  if (!d) {
    throw StrategyFault("relabel: " + last->v.to_string() +
                        " is outside the image of i");
  }
  return inner_->move(PlayerTwoMove{*d, last->w});
}

PlayerOnePtr relabel_strategy(const PlayerOneStrategy& s0,
                              std::vector<std::pair<Dyadic, Dyadic>> mapping) {
  return std::make_unique<RelabeledOne>(s0.clone(), std::move(mapping));
}

}  // namespace limsup
