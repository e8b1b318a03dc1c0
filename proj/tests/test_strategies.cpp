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

#include <set>

#include "doctest.h"
#include "limsup/corpus.h"
#include "limsup/strategies.h"
#include "oracles.h"

namespace limsup {
namespace {

PlayerTwoMove val(const Dyadic& v) { return {v, std::nullopt}; }
PlayerTwoMove pair(const Dyadic& v, const Dyadic& w) { return {v, w}; }

Payoff indicator_payoff() {
  return Payoff::from_function(eventually_zero_instance().f, "indicator");
}

TEST_CASE("strategy from u replays u's outputs") {
  Rng rng = SeedSplitter(21).stream("strategies");
  for (int i = 0; i < 30; ++i) {
    const NodeAutomaton u = random_automaton(rng);
    const auto s = strategy_ii_from_u(u);
    const auto induced = u_from_strategy_ii(*s);
    for (std::size_t k = 1; k <= 6; ++k) {
      for (const Prefix& w : oracle::words(2, k)) {
        CHECK(induced(w) == u.value(w));
      }
    }
  }
  const auto s = strategy_ii_from_u(NodeAutomaton::letter_value());
  CHECK_THROWS_AS(u_from_strategy_ii(*s)(Prefix{}), std::invalid_argument);
}

TEST_CASE("pair strategy negates the second machine") {
  const PairTwo two(strategy_ii_from_u(NodeAutomaton::letter_value()),
                    strategy_ii_from_u(NodeAutomaton::constant(Dyadic(3, 2))));
  PairTwo run = two;
  CHECK(run.move(1) == pair(Dyadic(1), Dyadic(-3, 2)));
  CHECK(run.move(0) == pair(Dyadic(0), Dyadic(-3, 2)));
}

TEST_CASE("meager-dense strategy against a constant 29/32") {
  auto inst = std::make_shared<const MeagerDenseInstance>(eventually_zero_instance());
  MeagerDenseOne one(inst);
  ConstantTwo two(val(Dyadic(29, 5)));
  PlayOptions opt;
  opt.horizon = 200;
  opt.stop_at_lasso = true;
  opt.extra_periods = 2;
  const RunTrace t = play_in_place(GameKind::gamma(), one, two, opt);
  REQUIRE(t.lasso);
  // 29/32 clears 1 - 2^-m for m = 0..3 and fails at m = 4.
  CHECK(one.m() == 4);
  REQUIRE(one.switches().size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(one.switches()[i].m_before == i);
    CHECK(one.switches()[i].round == i + 1);
  }
  CHECK(one.target()->canonical() ==
        EventuallyPeriodicBranch({0, 1, 1, 1, 1, 1}, {0}));
  CHECK(one.prefix_violations() == 0);
  const Verdict v = check_win(t, indicator_payoff(), GameKind::gamma());
  CHECK(v.outcome == Outcome::kWinOne);
  CHECK(v.witness->f == Dyadic(1));
  CHECK(v.witness->limsup_v == Dyadic(29, 5));
}

TEST_CASE("meager-dense strategy keeps switching against v = 1") {
  auto inst = std::make_shared<const MeagerDenseInstance>(eventually_zero_instance());
  MeagerDenseOne one(inst);
  ConstantTwo two(val(Dyadic(1)));
  PlayOptions opt;
  opt.horizon = 300;
  const RunTrace t = play_in_place(GameKind::gamma(), one, two, opt);
  CHECK_FALSE(t.lasso);
  CHECK(one.switches().size() > 100);
  CHECK(one.prefix_violations() == 0);
  // The play meets infinitely many 1s, so f(x) = 0 < 1 = limsup v.
  std::size_t ones = 0;
  for (Letter a : t.letters()) ones += a;
  CHECK(ones > 100);
}

TEST_CASE("meager-dense strategy beats every small finite-state II") {
  auto inst = std::make_shared<const MeagerDenseInstance>(eventually_zero_instance());
  const MeagerDenseOne one(inst);
  Rng rng = SeedSplitter(22).stream("strategies");
  const std::vector<Dyadic> values{0, Dyadic(1, 1), Dyadic(29, 5), 1};
  std::size_t exact = 0;
  for (int i = 0; i < 60; ++i) {
    const FsmTwo two = random_fsm_two(rng, 3, values, false);
    const Verdict v =
        exact_verdict(GameKind::gamma(), one, two, indicator_payoff(), 2000);
    if (v.fault) FAIL(v.fault->message);
    if (v.exact()) {
      ++exact;
      CHECK(v.outcome == Outcome::kWinOne);
    } else {
      // Still switching at the horizon.
      CHECK(std::stoul(v.diagnostics->counters_one.at("switches")) > 100);
    }
  }
  CHECK(exact > 0);
}

TEST_CASE("pick_y contract violations are faults") {
  auto bad = eventually_zero_instance();
  bad.pick_y = [](std::span<const Letter>, std::size_t) {
    return EventuallyPeriodicBranch({1}, {0});
  };
  MeagerDenseOne one(std::make_shared<const MeagerDenseInstance>(bad));
  ConstantTwo two(val(Dyadic(1)));
  PlayOptions opt;
  opt.horizon = 20;
  const RunTrace t = play_in_place(GameKind::gamma(), one, two, opt);
  REQUIRE(t.fault);
  CHECK(t.fault->player == Player::kOne);
}

TEST_CASE("oscillation strategy against (1, 0)") {
  auto inst =
      std::make_shared<const OscillationInstance>(indicator_oscillation_instance());
  OscillationOne one(inst);
  ConstantTwo two(pair(Dyadic(1), Dyadic(0)));
  PlayOptions opt;
  opt.horizon = 200;
  const RunTrace t = play_in_place(GameKind::gamma_prime(), one, two, opt);
  CHECK_FALSE(t.lasso);
  // A trigger at every stage from 1 on, alternating phases. II's move in the
  // last round is never read.
  REQUIRE(one.triggers().size() == 198);
  for (std::size_t i = 0; i < one.triggers().size(); ++i) {
    CHECK(one.triggers()[i].round == i + 1);
    CHECK(one.triggers()[i].k == i);
  }
  for (Letter a : t.letters()) CHECK(a == 0);
  const auto bound = check_oscillation_bound(one.triggers(), inst->epsilon);
  CHECK(bound.completed == 99);
  CHECK(bound.violations == 0);
  CHECK(bound.min_gap == Dyadic(1));
}

TEST_CASE("oscillation strategy stalls against (1/2, 1/2)") {
  auto inst =
      std::make_shared<const OscillationInstance>(indicator_oscillation_instance());
  const Verdict v = exact_verdict(GameKind::gamma_prime(), OscillationOne(inst),
                                  ConstantTwo(pair(Dyadic(1, 1), Dyadic(1, 1))),
                                  indicator_payoff(), 1000);
  REQUIRE(v.exact());
  CHECK(v.outcome == Outcome::kWinOne);
  CHECK(v.witness->f == Dyadic(1));
}

TEST_CASE("oscillation chains hold against random II") {
  auto inst =
      std::make_shared<const OscillationInstance>(indicator_oscillation_instance());
  Rng rng = SeedSplitter(23).stream("strategies");
  const std::vector<Dyadic> values{0, Dyadic(1, 3), Dyadic(1, 1), Dyadic(7, 3), 1};
  for (int i = 0; i < 60; ++i) {
    const FsmTwo two = random_fsm_two(rng, 3, values, true);
    OscillationOne one(inst);
    FsmTwo run = two;
    PlayOptions opt;
    opt.horizon = 1500;
    opt.stop_at_lasso = true;
    opt.extra_periods = 1;
    const RunTrace t = play_in_place(GameKind::gamma_prime(), one, run, opt);
    REQUIRE_FALSE(t.fault);
    CHECK(check_oscillation_bound(one.triggers(), inst->epsilon).violations == 0);
    if (t.lasso) {
      const Verdict v = check_win(t, indicator_payoff(), GameKind::gamma_prime());
      CHECK(v.outcome == Outcome::kWinOne);
    }
  }
}

TEST_CASE("dyadic spiral order") {
  const DyadicSpiral q(8);
  CHECK(q.size() == 4097);
  CHECK(q[0] == Dyadic(0));
  CHECK(q[1] == Dyadic(1, 1));
  CHECK(q[2] == Dyadic(-1, 1));
  CHECK(q[3] == Dyadic(1));
  CHECK(q[4] == Dyadic(-1));
  std::set<Dyadic> seen;
  for (std::size_t i = 0; i < q.size(); ++i) seen.insert(q[i]);
  CHECK(seen.size() == q.size());
  Rng rng = SeedSplitter(24).stream("strategies");
  for (int i = 0; i < 300; ++i) {
    const Dyadic v(static_cast<std::int64_t>(uniform_int(rng, 0, 8000)) - 4000,
                   static_cast<std::uint32_t>(uniform_int(rng, 0, 11)));
    const auto tol = Dyadic::pow2_neg(static_cast<std::uint32_t>(uniform_int(rng, 0, 12)));
    std::optional<std::size_t> brute;
    for (std::size_t j = 0; j < q.size() && !brute; ++j) {
      if ((v - q[j]).abs() <= tol) brute = j;
    }
    CHECK(q.least_within(v, tol) == brute);
  }
}

TEST_CASE("approx copycat tracks II within 2^-n") {
  auto q = std::make_shared<const DyadicSpiral>(8);
  Rng rng = SeedSplitter(25).stream("strategies");
  std::vector<Dyadic> values;
  for (std::int64_t z = -16; z <= 16; ++z) values.emplace_back(z, 3);
  for (int i = 0; i < 20; ++i) {
    const FsmTwo two = random_fsm_two(rng, 4, values, false, 4097);
    PlayOptions opt;
    opt.horizon = 40;
    const RunTrace t = play(GameKind::gamma(), ApproxCopycatOne(q), two, opt);
    REQUIRE_FALSE(t.fault);
    CHECK(t.rounds[0].x == 0);
    for (std::size_t n = 0; n + 1 < t.rounds.size(); ++n) {
      const Dyadic err = (t.rounds[n].move.v - (*q)[t.rounds[n + 1].x]).abs();
      CHECK(err <= Dyadic::pow2_neg(static_cast<std::uint32_t>(n)));
    }
  }
  PlayOptions opt;
  opt.horizon = 5;
  const RunTrace far = play(GameKind::gamma(), ApproxCopycatOne(q),
                            ConstantTwo(val(Dyadic(100))), opt);
  REQUIRE(far.fault);
  CHECK(far.fault->player == Player::kOne);
}

TEST_CASE("copycat faults on non-natural values") {
  PlayOptions opt;
  opt.horizon = 5;
  const RunTrace t = play(GameKind::gamma(), CopycatOne(),
                          ConstantTwo(val(Dyadic(1, 1))), opt);
  REQUIRE(t.fault);
  CHECK(t.fault->round == 1);
}

TEST_CASE("lifted strategy replays the inner strategy on rounded values") {
  const ValueSet r = ValueSet::finite({0, 1});
  Rng rng = SeedSplitter(26).stream("strategies");
  std::vector<Dyadic> dyadics;
  for (std::int64_t z = 0; z <= 4; ++z) dyadics.emplace_back(z, 2);
  for (int i = 0; i < 30; ++i) {
    const FsmOne inner = random_fsm_one(rng, 3, r.values());
    const FsmTwo two = random_fsm_two(rng, 3, dyadics, false);
    LiftedOne lifted(inner.clone(), r);
    FsmTwo run = two;
    PlayOptions opt;
    opt.horizon = 120;
    const RunTrace t = play_in_place(GameKind::gamma(), lifted, run, opt);
    REQUIRE_FALSE(t.fault);
    // Oracle: nearest point of R by scanning.
    for (std::size_t n = 0; n < lifted.rounded().size(); ++n) {
      const Dyadic y = t.rounds[n].move.v;
      const Dyadic expect = (y - Dyadic(0)).abs() <= (y - Dyadic(1)).abs()
                                ? Dyadic(0) : Dyadic(1);
      CHECK(lifted.rounded()[n] == expect);
    }
    PlayerOnePtr replay = inner.clone();
    CHECK(replay->move(std::nullopt) == t.rounds[0].x);
    for (std::size_t n = 1; n < t.rounds.size(); ++n) {
      CHECK(replay->move(val(lifted.rounded()[n - 1])) == t.rounds[n].x);
    }
  }
}

TEST_CASE("lift tolerance") {
  CHECK(lift_tolerance(0) == Dyadic(1, 1));
  CHECK(lift_tolerance(1) == Dyadic(1, 2));
  CHECK(lift_tolerance(2) == Dyadic(1, 2));
  CHECK(lift_tolerance(3) == Dyadic(1, 3));
}

TEST_CASE("relabeled strategy") {
  const std::vector<std::pair<Dyadic, Dyadic>> map{
      {0, 0}, {Dyadic(1, 1), Dyadic(1, 2)}, {1, 3}};
  Rng rng = SeedSplitter(27).stream("strategies");
  const FsmOne inner = random_fsm_one(rng, 3, {0, Dyadic(1, 1), 1});
  const RelabeledOne one(inner.clone(), map);
  for (int i = 0; i < 20; ++i) {
    std::vector<PlayerTwoMove> cycle, pre;
    for (int j = 0; j < 5; ++j) {
      const auto& [d, image] = map[uniform_int(rng, 0, 2)];
      cycle.push_back(val(image));
      pre.push_back(val(d));
    }
    PlayOptions opt;
    opt.horizon = 30;
    const RunTrace a = play(GameKind::gamma(), one, CyclicTwo(cycle), opt);
    const RunTrace b = play(GameKind::gamma(), inner, CyclicTwo(pre), opt);
    CHECK(a.letters() == b.letters());
  }
  PlayOptions opt;
  opt.horizon = 5;
  const RunTrace bad = play(GameKind::gamma(), one, ConstantTwo(val(2)), opt);
  REQUIRE(bad.fault);
  CHECK(bad.fault->player == Player::kOne);
  CHECK_THROWS_AS(RelabeledOne(inner.clone(), {{0, 1}, {1, 0}}),
                  std::invalid_argument);
}

}  // namespace
}  // namespace limsup
