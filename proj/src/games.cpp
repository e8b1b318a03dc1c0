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

#include "limsup/games.h"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace limsup {

using json = nlohmann::json;

namespace {

struct KeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t v : k) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

void append_dyadic(StateKey& key, const Dyadic& d) {
  key.push_back(d.numerator());
  key.push_back(d.exponent());
}

std::optional<StateKey> joint_key(const PlayerOneStrategy& one,
                                  const PlayerTwoStrategy& two,
                                  const std::optional<PlayerTwoMove>& last,
                                  std::optional<std::size_t> u_state) {
  auto k1 = one.state_key();
  auto k2 = two.state_key();
  if (!k1 || !k2) return std::nullopt;
  StateKey key;
  key.reserve(k1->size() + k2->size() + 10);
  key.push_back(static_cast<std::int64_t>(k1->size()));
  key.insert(key.end(), k1->begin(), k1->end());
  key.push_back(static_cast<std::int64_t>(k2->size()));
  key.insert(key.end(), k2->begin(), k2->end());
  key.push_back(last ? 1 : 0);
  if (last) {
    append_dyadic(key, last->v);
    key.push_back(last->w ? 1 : 0);
    if (last->w) append_dyadic(key, *last->w);
  }
  key.push_back(u_state ? static_cast<std::int64_t>(*u_state) : -1);
  return key;
}

std::string fault_message(const std::exception& e) { return e.what(); }

json dyadic_json(const Dyadic& d) { return d.to_string(); }

json counters_json(const Counters& c) {
  json out = json::object();
  for (const auto& [k, v] : c) out[k] = v;
  return out;
}

}  // namespace

ValueSet ValueSet::finite(std::vector<Dyadic> values) {
  if (values.empty()) throw std::invalid_argument("value set is empty");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  ValueSet r;
  r.values_ = std::move(values);
  return r;
}

ValueSet ValueSet::grid(std::uint32_t exponent, const Dyadic& lo,
                        const Dyadic& hi) {
  ValueSet r;
  r.grid_ = true;
  r.exponent_ = exponent;
  r.lo_ = lo.ceil_to_grid(exponent);
  r.hi_ = -((-hi).ceil_to_grid(exponent));
  if (r.hi_ < r.lo_) throw std::invalid_argument("value grid is empty");
  return r;
}

bool ValueSet::contains(const Dyadic& y) const {
  if (grid_) return y.on_grid(exponent_) && lo_ <= y && y <= hi_;
  return std::binary_search(values_.begin(), values_.end(), y);
}

Dyadic ValueSet::nearest(const Dyadic& y) const {
  if (grid_) {
    if (y <= lo_) return lo_;
    if (y >= hi_) return hi_;
    const Dyadic up = y.ceil_to_grid(exponent_);
    if (up == y) return y;
    const Dyadic down = up - Dyadic::pow2_neg(exponent_);
    return (y - down) <= (up - y) ? down : up;
  }
  auto it = std::lower_bound(values_.begin(), values_.end(), y);
  if (it == values_.end()) return values_.back();
  if (it == values_.begin() || *it == y) return *it;
  const Dyadic& up = *it;
  const Dyadic& down = *(it - 1);
  return (y - down) <= (up - y) ? down : up;
}

Dyadic ValueSet::near(const Dyadic& y, const Dyadic& tolerance) const {
  if (tolerance <= Dyadic(0)) {
    throw std::invalid_argument("near: tolerance must be positive");
  }
  return nearest(y);
}

Dyadic ValueSet::distance(const Dyadic& y) const {
  return (y - nearest(y)).abs();
}

std::string ValueSet::to_string() const {
  std::ostringstream out;
  if (grid_) {
    out << "grid(2^-" << exponent_ << ",[" << lo_ << "," << hi_ << "])";
    return out.str();
  }
  out << "{";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out << (i ? "," : "") << values_[i];
  }
  out << "}";
  return out.str();
}

std::string GameKind::name() const {
  switch (variant) {
    case GameVariant::kGamma: return "gamma";
    case GameVariant::kGammaPrime: return "gamma_prime";
    case GameVariant::kGammaRestricted: return "gamma_restricted";
  }
  return "unknown";
}

Prefix RunTrace::letters() const {
  Prefix out;
  out.reserve(rounds.size());
  for (const Round& r : rounds) out.push_back(r.x);
  return out;
}

std::optional<EventuallyPeriodicBranch> RunTrace::branch() const {
  if (!lasso || rounds.size() < lasso->start + lasso->period) {
    return std::nullopt;
  }
  Prefix stem;
  Prefix cycle;
  for (std::size_t t = 0; t < lasso->start + lasso->period; ++t) {
    (t < lasso->start ? stem : cycle).push_back(rounds[t].x);
  }
  return EventuallyPeriodicBranch(std::move(stem), std::move(cycle));
}

Payoff Payoff::from_automaton(NodeAutomaton u) {
  Payoff p;
  p.u_ = u;
  p.f_ = [u = std::move(u)](const EventuallyPeriodicBranch& x) {
    return eval_limsup(u, x);
  };
  p.name_ = "automaton";
  return p;
}

Payoff Payoff::from_function(Evaluator f, std::string name) {
  Payoff p;
  p.f_ = std::move(f);
  p.name_ = std::move(name);
  return p;
}

RunTrace play(const GameKind& kind, const PlayerOneStrategy& one,
              const PlayerTwoStrategy& two, const PlayOptions& options) {
  PlayerOnePtr a = one.clone();
  PlayerTwoPtr b = two.clone();
  return play_in_place(kind, *a, *b, options);
}

RunTrace play_in_place(const GameKind& kind, PlayerOneStrategy& one,
                       PlayerTwoStrategy& two, const PlayOptions& options) {
  if (options.horizon == 0) throw std::invalid_argument("horizon must be >= 1");
  if (options.horizon > kMaxRounds) {
    throw std::invalid_argument("horizon exceeds the trace cap of " +
                                std::to_string(kMaxRounds) + " rounds");
  }
  if (kind.variant == GameVariant::kGammaRestricted && !kind.restricted) {
    throw std::invalid_argument("restricted game without a value set");
  }
  const NodeAutomaton* u = options.payoff_automaton;
  const TreeSpec tree = options.tree ? *options.tree
                        : u          ? u->tree()
                                     : TreeSpec::full_naturals();

  RunTrace trace;
  trace.player_one = one.name();
  trace.player_two = two.name();
  trace.keyed = tree.is_full();
  std::unordered_map<StateKey, std::size_t, KeyHash> seen;
  std::optional<PlayerTwoMove> last;
  std::optional<std::size_t> u_state;
  if (u) u_state = u->initial();
  std::optional<std::size_t> stop_round;
  Prefix letters;

  for (std::size_t t = 0; t < options.horizon; ++t) {
    if (stop_round && t >= *stop_round) break;
    if (trace.keyed && !trace.lasso) {
      auto key = joint_key(one, two, last, u_state);
      if (!key) {
        ++trace.unkeyed_rounds;
      } else {
        auto [it, fresh] = seen.try_emplace(std::move(*key), t);
        if (!fresh) {
          const std::size_t start = it->second;
          trace.lasso = Lasso{start, t - start, KeyHash()(it->first)};
          seen.clear();
          if (options.stop_at_lasso) {
            stop_round = t + options.extra_periods * (t - start);
            if (t >= *stop_round) break;
          }
        }
      }
    }

    Letter x = 0;
    try {
      x = one.move(last);
    } catch (const std::exception& e) {
      trace.fault = Fault{Player::kOne, t, fault_message(e), letters};
      break;
    }
    letters.push_back(x);
    const bool legal = tree.arity() ? x < *tree.arity()
                       : tree.is_full() ? true
                                        : tree.contains(letters);
    if (!legal) {
      trace.fault = Fault{Player::kOne, t,
                          "letter " + std::to_string(x) + " leaves the tree",
                          letters};
      break;
    }

    PlayerTwoMove move;
    try {
      move = two.move(x);
    } catch (const std::exception& e) {
      trace.fault = Fault{Player::kTwo, t, fault_message(e), letters};
      break;
    }
    std::string illegal;
    if (kind.pairs() && !move.w) {
      illegal = "Gamma' requires a pair (v, w)";
    } else if (!kind.pairs() && move.w) {
      illegal = "a pair was played outside Gamma'";
    } else if (kind.variant == GameVariant::kGammaRestricted &&
               !kind.restricted->contains(move.v)) {
      illegal = "value " + move.v.to_string() + " is outside R = " +
                kind.restricted->to_string();
    }
    if (!illegal.empty()) {
      trace.fault = Fault{Player::kTwo, t, illegal, letters};
      break;
    }

    trace.rounds.push_back(Round{x, move});
    if (u) u_state = u->step(*u_state, x).next;
    last = move;
  }
  trace.counters_one = one.counters();
  trace.counters_two = two.counters();
  return trace;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::kWinTwo: return "WinII";
    case Outcome::kWinOne: return "WinI";
    case Outcome::kUndecided: return "UndecidedAtHorizon";
  }
  return "unknown";
}

namespace {

Verdict fault_verdict(const RunTrace& trace) {
  Verdict v;
  v.fault = trace.fault;
  // The player who breaks the rules loses the run.
  v.outcome = trace.fault->player == Player::kOne ? Outcome::kWinTwo
                                                  : Outcome::kWinOne;
  return v;
}

Verdict lasso_verdict(const RunTrace& trace, const Payoff& payoff,
                      const GameKind& kind) {
  const Lasso& lasso = *trace.lasso;
  const auto x = trace.branch();
  if (!x || lasso.period == 0) {
    throw CertificateMismatch("lasso extends past the recorded rounds");
  }
  Witness w;
  w.f = payoff.value(*x);
  const auto begin = trace.rounds.begin() + static_cast<std::ptrdiff_t>(lasso.start);
  const auto end = begin + static_cast<std::ptrdiff_t>(lasso.period);
  w.limsup_v = std::max_element(begin, end, [](const Round& a, const Round& b) {
                 return a.move.v < b.move.v;
               })->move.v;
  bool win = w.f == w.limsup_v;
  if (kind.pairs()) {
    std::optional<Dyadic> lo;
    for (auto it = begin; it != end; ++it) {
      if (!it->move.w) throw CertificateMismatch("Gamma' round without w");
      lo = lo ? min(*lo, *it->move.w) : *it->move.w;
    }
    w.liminf_w = lo;
    win = win && *lo == w.f;
  }
  Verdict v;
  v.outcome = win ? Outcome::kWinTwo : Outcome::kWinOne;
  v.witness = w;
  v.lasso = lasso;
  return v;
}

}  // namespace

Verdict undecided_verdict(const RunTrace& trace, std::string reason) {
  Verdict v;
  Diagnostics d;
  d.horizon = trace.rounds.size();
  d.window_start = d.horizon / 2;
  d.reason = std::move(reason);
  d.counters_one = trace.counters_one;
  d.counters_two = trace.counters_two;
  bool first = true;
  for (std::size_t t = d.window_start; t < d.horizon; ++t) {
    const PlayerTwoMove& m = trace.rounds[t].move;
    d.max_v = first ? m.v : max(d.max_v, m.v);
    d.min_v = first ? m.v : min(d.min_v, m.v);
    if (m.w) {
      d.max_w = d.max_w ? max(*d.max_w, *m.w) : *m.w;
      d.min_w = d.min_w ? min(*d.min_w, *m.w) : *m.w;
    }
    first = false;
  }
  v.diagnostics = std::move(d);
  return v;
}

Verdict exact_verdict(const GameKind& kind, const PlayerOneStrategy& one,
                      const PlayerTwoStrategy& two, const Payoff& payoff,
                      std::size_t cap, std::optional<TreeSpec> tree) {
  PlayOptions options;
  options.horizon = cap;
  options.stop_at_lasso = true;
  options.tree = std::move(tree);
  if (payoff.automaton()) options.payoff_automaton = &*payoff.automaton();
  const RunTrace trace = play(kind, one, two, options);
  if (trace.fault) return fault_verdict(trace);
  if (trace.lasso) return lasso_verdict(trace, payoff, kind);
  std::string reason = "no repeated joint state within cap";
  if (!trace.keyed) {
    reason = "tree is not full; lassos are not certified";
  } else if (trace.unkeyed_rounds == trace.rounds.size()) {
    reason = "a strategy state is not keyed";
  }
  return undecided_verdict(trace, std::move(reason));
}

Verdict check_win(const RunTrace& trace, const Payoff& payoff,
                  const GameKind& kind) {
  if (trace.fault) return fault_verdict(trace);
  if (!trace.lasso) throw CertificateMismatch("trace has no lasso");
  const Lasso& lasso = *trace.lasso;
  if (lasso.period == 0 || trace.rounds.size() < lasso.start + lasso.period) {
    throw CertificateMismatch("lasso extends past the recorded rounds");
  }
  for (std::size_t t = lasso.start + lasso.period; t < trace.rounds.size(); ++t) {
    if (trace.rounds[t] != trace.rounds[t - lasso.period]) {
      throw CertificateMismatch("round " + std::to_string(t) +
                                " breaks the recorded period");
    }
  }
  return lasso_verdict(trace, payoff, kind);
}

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  out << "t,x_t,v_t,w_t\n";
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const Round& r = trace.rounds[t];
    out << t << ',' << r.x << ',' << r.move.v << ',';
    if (r.move.w) out << *r.move.w;
    out << '\n';
  }
}

namespace {

json verdict_to_json(const Verdict& verdict) {
  json out;
  out["outcome"] = to_string(verdict.outcome);
  out["exact"] = verdict.exact();
  if (verdict.witness) {
    json w;
    w["f"] = dyadic_json(verdict.witness->f);
    w["limsup_v"] = dyadic_json(verdict.witness->limsup_v);
    if (verdict.witness->liminf_w) {
      w["liminf_w"] = dyadic_json(*verdict.witness->liminf_w);
    }
    out["witness"] = w;
  }
  if (verdict.lasso) {
    out["lasso"] = {{"start", verdict.lasso->start},
                    {"period", verdict.lasso->period}};
  }
  if (verdict.diagnostics) {
    const Diagnostics& d = *verdict.diagnostics;
    json diag;
    diag["horizon"] = d.horizon;
    diag["window_start"] = d.window_start;
    diag["reason"] = d.reason;
    if (d.horizon > d.window_start) {
      diag["max_v"] = dyadic_json(d.max_v);
      diag["min_v"] = dyadic_json(d.min_v);
    }
    if (d.max_w) diag["max_w"] = dyadic_json(*d.max_w);
    if (d.min_w) diag["min_w"] = dyadic_json(*d.min_w);
    diag["counters_one"] = counters_json(d.counters_one);
    diag["counters_two"] = counters_json(d.counters_two);
    out["diagnostics"] = diag;
  }
  if (verdict.fault) out["fault"] = json::parse(fault_json(*verdict.fault));
  return out;
}

}  // namespace

std::string fault_json(const Fault& fault) {
  json out;
  out["player"] = fault.player == Player::kOne ? "I" : "II";
  out["round"] = fault.round;
  out["message"] = fault.message;
  out["prefix"] = prefix_to_string(fault.prefix);
  return out.dump();
}

std::string verdict_json(const Verdict& verdict) {
  return verdict_to_json(verdict).dump();
}

std::string trace_sidecar_json(const RunTrace& trace, const Verdict& verdict,
                               const GameKind& kind) {
  json out;
  out["game"] = kind.name();
  if (kind.restricted) out["value_set"] = kind.restricted->to_string();
  out["player_one"] = trace.player_one;
  out["player_two"] = trace.player_two;
  out["rounds"] = trace.rounds.size();
  if (trace.lasso) {
    std::ostringstream cert;
    cert << std::hex << trace.lasso->certificate;
    out["lasso"] = {{"start", trace.lasso->start},
                    {"period", trace.lasso->period},
                    {"certificate", cert.str()}};
  } else {
    out["lasso"] = nullptr;
  }
  out["verdict"] = verdict_to_json(verdict);
  out["counters_one"] = counters_json(trace.counters_one);
  out["counters_two"] = counters_json(trace.counters_two);
  return out.dump(2);
}

}  // namespace limsup
