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

#include "limsup/suite.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "limsup/construct.h"
#include "limsup/corpus.h"
#include "limsup/games.h"
#include "limsup/strategies.h"

namespace limsup {
namespace {

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what();
  }
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void(const SuiteOptions&, Tally&, CriterionResult&)> run;
};

std::vector<Dyadic> grid(std::uint32_t exp, std::int64_t lo, std::int64_t hi) {
  std::vector<Dyadic> out;
  for (std::int64_t z = lo << exp; z <= hi << exp; ++z) out.emplace_back(z, exp);
  return out;
}

std::string rows(const RunTrace& t, std::size_t limit) {
  std::ostringstream out;
  RunTrace head = t;
  if (head.rounds.size() > limit) head.rounds.resize(limit);
  write_trace_csv(head, out);
  return out.str();
}

// ---------------------------------------------------------------------------

NodeAutomaton tampered(const NodeAutomaton& u) {
  std::vector<NodeAutomaton::Transition> table;
  for (std::size_t q = 0; q < u.num_states(); ++q) {
    for (std::size_t c = 0; c < u.num_classes(); ++c) table.push_back(u.transition(q, c));
  }
  for (auto& tr : table) tr.output = tr.output + Dyadic(1);
  table.front().output = table.front().output - Dyadic(1);
  return NodeAutomaton(u.num_states(), u.num_letters(), u.has_default(),
                       u.initial(), std::move(table));
}

void from_u_wins_gamma(const SuiteOptions& opt, Tally& tally,
                       CriterionResult& result) {
  const SeedSplitter seeds(opt.seed);
  Rng corpus_rng = seeds.stream("corpus");
  Rng opponent_rng = seeds.stream("opponents");
  const AutomatonShape shape{1, 4, 2, 3, -2, 2};
  const auto corpus = automaton_corpus(corpus_rng, 100, shape);
  const auto values = grid(3, -2, 2);
  std::vector<FsmOne> opponents;
  for (int i = 0; i < 20; ++i) opponents.push_back(random_fsm_one(opponent_rng, 3, values));

  const bool tamper = opt.tamper.has_value();
  std::optional<std::pair<std::size_t, RunTrace>> smallest;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const NodeAutomaton& u = corpus[i];
    const NodeAutomaton payoff_u = tamper ? tampered(u) : u;
    const Payoff payoff = Payoff::from_automaton(payoff_u);
    const FromAutomatonTwo two(u);
    for (std::size_t j = 0; j < opponents.size(); ++j) {
      const Verdict v =
          exact_verdict(GameKind::gamma(), opponents[j], two, payoff, 100000);
      // Independent replay: three extra periods, then recompute.
      PlayOptions po;
      po.horizon = 100000;
      po.stop_at_lasso = true;
      po.extra_periods = 3;
      po.payoff_automaton = &payoff_u;
      const RunTrace t = play(GameKind::gamma(), opponents[j], two, po);
      bool replay_ok = false;
      try {
        const Verdict again = check_win(t, payoff, GameKind::gamma());
        replay_ok = again.outcome == v.outcome && again.witness == v.witness;
      } catch (const CertificateMismatch&) {
      }
      const bool ok = v.exact() && v.outcome == Outcome::kWinTwo && replay_ok &&
                      v.witness->f == eval_limsup(payoff_u, *t.branch());
      tally.expect(ok, [&] {
        return "machine " + std::to_string(i) + " vs opponent " +
               std::to_string(j) + ": " + verdict_json(v);
      });
      if (!ok && t.lasso) {
        const std::size_t size = t.lasso->start + t.lasso->period;
        if (!smallest || size < smallest->first) smallest.emplace(size, t);
      }
    }
  }
  if (smallest) result.counterexample = rows(smallest->second, smallest->first);
  result.detail = std::to_string(corpus.size()) + " machines x " +
                  std::to_string(opponents.size()) + " opponents";
}

// ---------------------------------------------------------------------------

// sup R_*(s) and sup R_n(s), n <= n_max, by scanning r over the 2^-6 grid
// in [-8, 8] and testing the membership conditions on the family's cylinder
// infima h_n:
//   r in R_*(s)  iff  h_n(s) > r for every n <= n_max
//   r in R_n(s)  iff  h_n(s) > r and h_n(s') <= r for every proper initial
//                     segment s' of s.
struct GridSups {
  std::optional<Dyadic> star;
  std::vector<std::optional<Dyadic>> level;
  std::optional<Dyadic> all;
};

GridSups grid_sups(const GridLscFamily& fam, const Prefix& s, std::size_t n_max) {
  std::vector<std::vector<ExtValue>> h(s.size() + 1);
  for (std::size_t len = 0; len <= s.size(); ++len) {
    const Prefix sp(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len));
    for (std::size_t n = 0; n <= n_max; ++n) h[len].push_back(fam.node_inf(n, sp));
  }
  GridSups out;
  out.level.resize(n_max + 1);
  const Dyadic step = Dyadic::pow2_neg(6);
  for (std::int64_t z = -8 * 64; z <= 8 * 64; ++z) {
    const ExtValue r(Dyadic(z, 6));
    const Dyadic above = r.value() + step;
    bool star = true;
    for (std::size_t n = 0; n <= n_max; ++n) {
      const bool inside = h[s.size()][n] > r;
      star = star && inside;
      bool first = inside;
      for (std::size_t len = 0; len < s.size() && first; ++len) {
        first = !(h[len][n] > r);
      }
      if (first) out.level[n] = above;
    }
    if (star) out.star = above;
  }
  out.all = out.star;
  for (const auto& l : out.level) {
    if (l) out.all = out.all ? max(*out.all, *l) : *l;
  }
  return out;
}

std::string opt_string(const std::optional<Dyadic>& d) {
  return d ? d->to_string() : "empty";
}

void construction_exact(const SuiteOptions& opt, Tally& tally,
                        CriterionResult& result) {
  Rng rng = SeedSplitter(opt.seed).stream("construct");
  const AutomatonShape shape{1, 3, 2, 3, -2, 2};
  const auto corpus = automaton_corpus(rng, 50, shape);
  const auto branches = enumerate_branches(2, 3, 3);
  std::vector<Prefix> prefixes{{}};
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    if (prefixes[i].size() == 4) continue;
    for (Letter a = 0; a < 2; ++a) prefixes.push_back(extend(prefixes[i], a));
  }
  std::size_t max_level = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const NodeAutomaton& u = corpus[i];
    const ConstructedFunction cu = construct_from_automaton(u);
    const auto report = verify_construction(
        cu, branches, [&](const auto& x) { return eval_limsup(u, x); });
    max_level = std::max(max_level, report.max_stabilization_level);
    for (const BranchCheck& c : report.checks) {
      tally.expect(c.equal(), [&] {
        return "machine " + std::to_string(i) + " on " + c.branch.to_string() +
               ": f = " + c.target.to_string() + ", limsup u = " +
               (c.constructed ? c.constructed->to_string() : "inconclusive");
      });
    }
    for (const Prefix& s : prefixes) {
      const ConstructedValue& got = cu.evaluate(s);
      const std::size_t n_max = got.stabilization_level + 2;
      const GridSups brute = grid_sups(cu.family(), s, n_max);
      const ExtValue star = rstar_sup(cu.family(), s);
      tally.expect(star.is_minus_infinity() ? !brute.star
                                            : brute.star && star.value() == *brute.star,
                   [&] {
                     return "machine " + std::to_string(i) + " at [" +
                            prefix_to_string(s) + "]: sup R_* = " +
                            star.to_string() + ", grid scan " +
                            opt_string(brute.star);
                   });
      for (std::size_t n = 0; n <= n_max; ++n) {
        const auto rn = rn_sup(cu.family(), n, s);
        const bool ok = rn ? brute.level[n] && rn->is_finite() &&
                                 rn->value() == *brute.level[n]
                           : !brute.level[n];
        tally.expect(ok, [&] {
          return "machine " + std::to_string(i) + " at [" + prefix_to_string(s) +
                 "]: sup R_" + std::to_string(n) + " = " +
                 (rn ? rn->to_string() : "empty") + ", grid scan " +
                 opt_string(brute.level[n]);
        });
      }
      const bool ok = brute.all
                          ? (!got.r_empty && got.value == *brute.all)
                          : (got.r_empty &&
                             got.value == Dyadic::integer(
                                              -static_cast<std::int64_t>(s.size())));
      tally.expect(ok, [&] {
        return "machine " + std::to_string(i) + " at [" + prefix_to_string(s) +
               "]: u = " + got.value.to_string() + ", grid scan = " +
               opt_string(brute.all);
      });
    }
  }
  result.detail = std::to_string(corpus.size()) + " machines, " +
                  std::to_string(branches.size()) + " branches, " +
                  std::to_string(prefixes.size()) +
                  " prefixes; max stabilization level " +
                  std::to_string(max_level);
}

// ---------------------------------------------------------------------------

void algebra_exact(const SuiteOptions& opt, Tally& tally, CriterionResult& result) {
  Rng rng = SeedSplitter(opt.seed).stream("algebra");
  const AutomatonShape shape{1, 3, 2, 3, -2, 2};
  const auto branches = enumerate_branches(2, 3, 3);
  const std::pair<AlgebraOp, const char*> ops[] = {
      {AlgebraOp::kSum, "sum"}, {AlgebraOp::kMin, "min"}, {AlgebraOp::kMax, "max"}};
  for (int i = 0; i < 50; ++i) {
    const NodeAutomaton u1 = random_automaton(rng, shape);
    const NodeAutomaton u2 = random_automaton(rng, shape);
    for (const auto& [op, name] : ops) {
      const ConstructedFunction cu = algebra(u1, u2, op);
      const auto report = verify_construction(cu, branches, [&](const auto& x) {
        const Dyadic a = eval_limsup(u1, x);
        const Dyadic b = eval_limsup(u2, x);
        return op == AlgebraOp::kSum ? a + b
               : op == AlgebraOp::kMin ? min(a, b)
                                       : max(a, b);
      });
      for (const BranchCheck& c : report.checks) {
        tally.expect(c.equal(), [&, name = name] {
          return std::string(name) + " of pair " + std::to_string(i) + " on " +
                 c.branch.to_string() + ": expected " + c.target.to_string() +
                 ", got " +
                 (c.constructed ? c.constructed->to_string() : "inconclusive");
        });
      }
    }
  }
  result.detail = "50 pairs x 3 ops x " + std::to_string(branches.size()) +
                  " branches";
}

// ---------------------------------------------------------------------------

void meager_dense_dichotomy(const SuiteOptions& opt, Tally& tally,
                            CriterionResult& result) {
  auto inst = std::make_shared<const MeagerDenseInstance>(eventually_zero_instance());
  const Payoff payoff = Payoff::from_function(inst->f, "eventually_zero");

  // (a) constant 29/32.
  {
    MeagerDenseOne one(inst);
    ConstantTwo two({Dyadic(29, 5), std::nullopt});
    PlayOptions po;
    po.horizon = 2000;
    const RunTrace t = play_in_place(GameKind::gamma(), one, two, po);
    const Dyadic v(29, 5);
    // No switch at an m with 1 - 2^-m >= 29/32, i.e. m >= 4.
    bool thresholds = true;
    for (const SwitchEvent& e : one.switches()) {
      thresholds = thresholds && e.m_before < 4;
    }
    tally.expect(thresholds && one.m() == 4 && one.switches().size() == 4, [&] {
      return "29/32: " + std::to_string(one.switches().size()) +
             " switches, final m = " + std::to_string(one.m());
    });
    const auto& y = *one.target();
    tally.expect(t.letters() == y.take(t.rounds.size()), [&] {
      return "29/32: play leaves the final target " + y.to_string();
    });
    tally.expect(inst->f(y) == Dyadic(1) && inst->f(y) != v, [&] {
      return "29/32: f(final target) = " + inst->f(y).to_string();
    });
    const Verdict ex = exact_verdict(GameKind::gamma(), MeagerDenseOne(inst), two,
                                     payoff, 2000);
    tally.expect(ex.exact() && ex.outcome == Outcome::kWinOne, [&] {
      return "29/32: verdict " + verdict_json(ex);
    });
    tally.expect(one.prefix_violations() == 0, [] { return std::string("29/32: play left the target"); });
  }

  // (b) constant 1.
  std::size_t switches[2] = {0, 0};
  for (int h = 0; h < 2; ++h) {
    MeagerDenseOne one(inst);
    ConstantTwo two({Dyadic(1), std::nullopt});
    PlayOptions po;
    po.horizon = h == 0 ? 1000 : 2000;
    const RunTrace t = play_in_place(GameKind::gamma(), one, two, po);
    switches[h] = one.switches().size();
    const Prefix x = t.letters();
    std::size_t covered = 0;
    for (std::size_t m = 0; m <= one.m(); ++m) {
      bool found = false;
      for (std::size_t d = m + 1; d < x.size() && !found; ++d) found = x[d] == 1;
      if (found) ++covered;
    }
    tally.expect(covered == one.m() + 1, [&] {
      return "constant 1: no 1 beyond some reached depth m at horizon " +
             std::to_string(po.horizon);
    });
    tally.expect(one.prefix_violations() == 0, [] { return std::string("constant 1: play left the target"); });
  }
  tally.expect(switches[1] > switches[0] && switches[1] >= 5, [&] {
    return "constant 1: switches " + std::to_string(switches[0]) + " -> " +
           std::to_string(switches[1]);
  });

  // (c) the play stays on the target against a corpus of finite-state opponents.
  Rng rng = SeedSplitter(opt.seed).stream("meager_opponents");
  const std::vector<Dyadic> values{0, Dyadic(1, 1), Dyadic(29, 5), Dyadic(63, 6), 1};
  for (int i = 0; i < 20; ++i) {
    MeagerDenseOne one(inst);
    FsmTwo two = random_fsm_two(rng, 3, values, false);
    PlayOptions po;
    po.horizon = 2000;
    const RunTrace t = play_in_place(GameKind::gamma(), one, two, po);
    tally.expect(!t.fault && one.prefix_violations() == 0, [&] {
      return "opponent " + std::to_string(i) + ": " +
             (t.fault ? t.fault->message : std::string("play left the target"));
    });
  }
  result.detail = "switches at horizon 1000/2000 vs 1: " +
                  std::to_string(switches[0]) + "/" + std::to_string(switches[1]);
}

// ---------------------------------------------------------------------------

void oscillation_chain(const SuiteOptions& opt, Tally& tally,
                       CriterionResult& result) {
  auto inst = std::make_shared<const OscillationInstance>(indicator_oscillation_instance());
  const Payoff payoff = Payoff::from_function(inst->f, "indicator");
  const GameKind kind = GameKind::gamma_prime();

  // (a) alternating (1, 0).
  {
    OscillationOne one(inst);
    ConstantTwo two({Dyadic(1), Dyadic(0)});
    PlayOptions po;
    po.horizon = 2000;
    play_in_place(kind, one, two, po);
    const auto bound = check_oscillation_bound(one.triggers(), inst->epsilon);
    tally.expect(bound.completed > 0 && bound.violations == 0, [&] {
      return "(1,0): " + std::to_string(bound.violations) + " of " +
             std::to_string(bound.completed) + " chains violated";
    });
    result.detail = "(1,0): " + std::to_string(bound.completed) + " chains";
  }

  // (b) constant (1/2, 1/2).
  {
    const Verdict v = exact_verdict(kind, OscillationOne(inst),
                                    ConstantTwo({Dyadic(1, 1), Dyadic(1, 1)}),
                                    payoff, 2000);
    tally.expect(v.exact() && v.outcome == Outcome::kWinOne,
                 [&] { return "(1/2,1/2): " + verdict_json(v); });
  }

  // (c) two-state pair-valued opponents.
  Rng rng = SeedSplitter(opt.seed).stream("oscillation_opponents");
  const auto values = grid(2, 0, 1);
  std::size_t exact = 0;
  for (int i = 0; i < 20; ++i) {
    OscillationOne one(inst);
    FsmTwo two = random_fsm_two(rng, 2, values, true);
    PlayOptions po;
    po.horizon = 2000;
    po.stop_at_lasso = true;
    po.extra_periods = 1;
    const RunTrace t = play_in_place(kind, one, two, po);
    if (t.fault) {
      tally.expect(false, [&] { return "opponent " + std::to_string(i) + ": " + t.fault->message; });
      continue;
    }
    if (t.lasso) {
      ++exact;
      const Verdict v = check_win(t, payoff, kind);
      tally.expect(v.outcome == Outcome::kWinOne, [&] {
        return "opponent " + std::to_string(i) + ": " + verdict_json(v);
      });
    } else {
      const std::size_t window = t.rounds.size() / 2;
      const auto bound = check_oscillation_bound(one.triggers(), inst->epsilon, window);
      tally.expect(bound.completed > 0 && bound.violations == 0, [&] {
        return "opponent " + std::to_string(i) + ": tail chains " +
               std::to_string(bound.completed) + ", violations " +
               std::to_string(bound.violations);
      });
    }
  }
  result.detail += ", " + std::to_string(exact) + "/20 opponents lassoed";
}

// ---------------------------------------------------------------------------

void pair_wins_gamma_prime(const SuiteOptions& opt, Tally& tally,
                           CriterionResult& result) {
  const SeedSplitter seeds(opt.seed);
  Rng fixture_rng = seeds.stream("baire");
  Rng opponent_rng = seeds.stream("pair_opponents");
  const auto branches = enumerate_branches(2, 3, 3);
  const auto values = grid(3, -2, 2);
  std::vector<FsmOne> opponents;
  for (int i = 0; i < 20; ++i) opponents.push_back(random_fsm_one(opponent_rng, 3, values));
  for (int i = 0; i < 20; ++i) {
    const BairePair fixture = random_baire_pair(fixture_rng);
    bool certified = true;
    for (const auto& x : branches) {
      certified = certified &&
                  eval_limsup(fixture.u_f, x) == -eval_limsup(fixture.u_neg, x);
    }
    tally.expect(certified, [&] { return "fixture " + std::to_string(i) + " is not a pair"; });
    if (!certified) continue;
    const PairTwo two(strategy_ii_from_u(fixture.u_f),
                      strategy_ii_from_u(fixture.u_neg));
    const Payoff payoff = Payoff::from_automaton(fixture.u_f);
    for (std::size_t j = 0; j < opponents.size(); ++j) {
      const Verdict v =
          exact_verdict(GameKind::gamma_prime(), opponents[j], two, payoff, 100000);
      tally.expect(v.exact() && v.outcome == Outcome::kWinTwo, [&] {
        return "fixture " + std::to_string(i) + " vs opponent " +
               std::to_string(j) + ": " + verdict_json(v);
      });
    }
  }
  result.detail = "20 fixtures x 20 opponents";
}

// ---------------------------------------------------------------------------

void lift_replay(const SuiteOptions& opt, Tally& tally, CriterionResult& result) {
  const SeedSplitter seeds(opt.seed);
  Rng inner_rng = seeds.stream("lift_inner");
  Rng opponent_rng = seeds.stream("lift_opponents");
  const ValueSet r = ValueSet::finite({0, 1});
  const FsmOne inner = random_fsm_one(inner_rng, 3, r.values());
  const auto values = grid(2, -1, 2);
  std::size_t in_r = 0;
  for (int i = 0; i < 20; ++i) {
    LiftedOne lifted(inner.clone(), r);
    FsmTwo two = random_fsm_two(opponent_rng, 3, values, false);
    PlayOptions po;
    po.horizon = 2000;
    po.stop_at_lasso = true;
    po.extra_periods = 2;
    const RunTrace t = play_in_place(GameKind::gamma(), lifted, two, po);
    PlayerOnePtr replay = inner.clone();
    bool same = !t.fault && lifted.rounded().size() + 1 >= t.rounds.size();
    for (std::size_t n = 0; same && n < t.rounds.size(); ++n) {
      const std::optional<PlayerTwoMove> fed =
          n == 0 ? std::nullopt
                 : std::optional<PlayerTwoMove>({lifted.rounded()[n - 1], std::nullopt});
      same = replay->move(fed) == t.rounds[n].x;
    }
    tally.expect(same, [&] { return "opponent " + std::to_string(i) + ": replay diverged"; });
    tally.expect(t.lasso.has_value(), [&] { return "opponent " + std::to_string(i) + ": no lasso"; });
    if (!t.lasso) continue;
    Dyadic sup_v = t.rounds[t.lasso->start].move.v;
    Dyadic sup_f = lifted.rounded()[t.lasso->start];
    for (std::size_t k = t.lasso->start; k < t.lasso->start + t.lasso->period; ++k) {
      sup_v = max(sup_v, t.rounds[k].move.v);
      sup_f = max(sup_f, lifted.rounded()[k]);
    }
    if (r.contains(sup_v)) {
      ++in_r;
      tally.expect(sup_f == sup_v, [&] {
        return "opponent " + std::to_string(i) + ": limsup F = " +
               sup_f.to_string() + ", limsup v = " + sup_v.to_string();
      });
    }
  }
  result.detail = "20 opponents, " + std::to_string(in_r) + " with limsup v in R";
}

// ---------------------------------------------------------------------------

void copycat_identities(const SuiteOptions& opt, Tally& tally,
                        CriterionResult& result) {
  const SeedSplitter seeds(opt.seed);
  Rng rng = seeds.stream("copycat_opponents");
  const auto naturals = grid(0, 0, 5);
  for (int i = 0; i < 20; ++i) {
    const FsmTwo two = random_fsm_two(rng, 3, naturals, false, 6);
    PlayOptions po;
    po.horizon = 5000;
    po.stop_at_lasso = true;
    po.extra_periods = 1;
    const RunTrace t = play(GameKind::gamma(), CopycatOne(), two, po);
    tally.expect(!t.fault && t.lasso.has_value(), [&] {
      return "copycat opponent " + std::to_string(i) + ": no lasso";
    });
    if (!t.lasso) continue;
    Letter sup_x = 0;
    Dyadic sup_v = t.rounds[t.lasso->start].move.v;
    for (std::size_t k = t.lasso->start; k < t.lasso->start + t.lasso->period; ++k) {
      sup_x = std::max(sup_x, t.rounds[k].x);
      sup_v = max(sup_v, t.rounds[k].move.v);
    }
    tally.expect(Dyadic::integer(static_cast<std::int64_t>(sup_x)) == sup_v, [&] {
      return "copycat opponent " + std::to_string(i) + ": limsup x = " +
             std::to_string(sup_x) + ", limsup v = " + sup_v.to_string();
    });
  }

  auto q = std::make_shared<const DyadicSpiral>(8);
  std::vector<Dyadic> values = grid(3, -2, 2);
  values.push_back(Dyadic(5, 7));
  values.push_back(Dyadic(-77, 8));
  std::size_t rounds = 0;
  for (int i = 0; i < 20; ++i) {
    const FsmTwo two = random_fsm_two(rng, 3, values, false, q->size());
    PlayOptions po;
    po.horizon = 200;
    const RunTrace t = play(GameKind::gamma(), ApproxCopycatOne(q), two, po);
    tally.expect(!t.fault, [&] {
      return "approx opponent " + std::to_string(i) + ": " + t.fault->message;
    });
    for (std::size_t n = 0; n + 1 < t.rounds.size(); ++n) {
      const Dyadic err = (t.rounds[n].move.v - (*q)[t.rounds[n + 1].x]).abs();
      ++rounds;
      const bool ok = n > 62 ? err.is_zero()
                              : err <= Dyadic::pow2_neg(static_cast<std::uint32_t>(n));
      tally.expect(ok, [&] {
        return "approx opponent " + std::to_string(i) + " round " +
               std::to_string(n) + ": error " + err.to_string();
      });
    }
  }
  result.detail = "20 copycat lassos, " + std::to_string(rounds) + " approx rounds";
}

std::vector<Criterion> criteria() {
  return {
      {"c1_from_u_wins_gamma", 10, from_u_wins_gamma},
      {"c2_construction_exact", 60, construction_exact},
      {"c3_algebra_exact", 60, algebra_exact},
      {"c4_meager_dense_dichotomy", 5, meager_dense_dichotomy},
      {"c5_oscillation_chain", 10, oscillation_chain},
      {"c6_pair_wins_gamma_prime", 20, pair_wins_gamma_prime},
      {"c7_lift_replay", 5, lift_replay},
      {"c8_copycat_identities", 5, copycat_identities},
  };
}

CriterionResult run_one(const Criterion& c, const SuiteOptions& opt) {
  CriterionResult result;
  result.name = c.name;
  result.budget_seconds = c.budget_seconds;
  SuiteOptions local = opt;
  if (local.tamper && *local.tamper != c.name) local.tamper.reset();
  Tally tally;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(local, tally, result);
  } catch (const std::exception& e) {
    tally.expect(false, [&] { return std::string("exception: ") + e.what(); });
  }
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  result.checks = tally.checks;
  result.failures = tally.failures;
  result.passed = tally.failures == 0 && tally.checks > 0;
  if (!result.passed) {
    result.detail = tally.first_failure.empty() ? "no checks ran"
                                                : tally.first_failure;
  }
  return result;
}

}  // namespace

std::vector<std::string> criterion_names() {
  std::vector<std::string> out;
  for (const auto& c : criteria()) out.push_back(c.name);
  return out;
}

bool SuiteReport::passed() const {
  return !criteria.empty() &&
         std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.passed; });
}

std::string SuiteReport::text() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  std::size_t passed_count = 0;
  for (const CriterionResult& c : criteria) {
    passed_count += c.passed ? 1 : 0;
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  checks=" << c.checks
        << " failures=" << c.failures << " time=" << c.seconds << "s"
        << " budget=" << c.budget_seconds << "s";
    if (c.seconds > c.budget_seconds) out << " (over budget)";
    out << "  " << c.detail << "\n";
    if (!c.counterexample.empty()) {
      out << "  smallest counterexample:\n";
      std::istringstream rows(c.counterexample);
      for (std::string line; std::getline(rows, line);) out << "    " << line << "\n";
    }
  }
  out << (passed() ? "PASS" : "FAIL") << " " << passed_count << "/"
      << criteria.size() << " criteria, seed " << seed << ", " << seconds
      << "s\n";
  return out.str();
}

std::string SuiteReport::json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["passed"] = passed();
  j["seconds"] = seconds;
  j["criteria"] = nlohmann::json::array();
  for (const CriterionResult& c : criteria) {
    nlohmann::json cj{{"name", c.name},       {"passed", c.passed},
                      {"checks", c.checks},   {"failures", c.failures},
                      {"seconds", c.seconds}, {"budget_seconds", c.budget_seconds},
                      {"detail", c.detail}};
    if (!c.counterexample.empty()) cj["counterexample"] = c.counterexample;
    j["criteria"].push_back(cj);
  }
  return j.dump(2);
}

SuiteReport run_suite(const SuiteOptions& options) {
  const auto all = criteria();
  if (options.tamper) {
    if (*options.tamper != all.front().name) {
      throw std::invalid_argument("tampering is supported for " +
                                  all.front().name + " only");
    }
  }
  std::vector<Criterion> chosen;
  for (const Criterion& c : all) {
    if (!options.filter || c.name.find(*options.filter) != std::string::npos) {
      chosen.push_back(c);
    }
  }
  SuiteReport report;
  report.seed = options.seed;
  const auto start = std::chrono::steady_clock::now();
  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  for (std::size_t i = 0; i < chosen.size(); i += jobs) {
    std::vector<std::future<CriterionResult>> batch;
    for (std::size_t k = i; k < std::min(chosen.size(), i + jobs); ++k) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                 run_one, std::cref(chosen[k]), std::cref(options)));
    }
    for (auto& f : batch) report.criteria.push_back(f.get());
  }
  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  std::sort(report.criteria.begin(), report.criteria.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  return report;
}

}  // namespace limsup
