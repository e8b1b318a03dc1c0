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

#include <thread>

#include "doctest.h"
#include "limsup/construct.h"
#include "limsup/corpus.h"
#include "oracles.h"

namespace limsup {
namespace {

using T = NodeAutomaton::Transition;

NodeAutomaton one_minus_letter() {
  return NodeAutomaton(1, 2, false, 0, {T{0, Dyadic(1)}, T{0, Dyadic(0)}});
}

std::vector<Prefix> prefixes_up_to(std::size_t len) {
  std::vector<Prefix> out;
  for (std::size_t k = 0; k <= len; ++k) {
    for (auto& w : oracle::words(2, k)) out.push_back(std::move(w));
  }
  return out;
}

// Every level is -inf everywhere, so R(s) is empty for every s.
class SparseFamily final : public GridLscFamily {
 public:
  ExtValue node_inf(std::size_t n, std::span<const Letter> s) const override {
    (void)n;
    (void)s;
    return ExtValue::minus_infinity();
  }
  std::size_t stable_level(std::span<const Letter>) const override { return 0; }
  std::uint32_t grid_exponent(std::size_t) const override { return 0; }
  std::uint32_t grid_bound() const override { return 0; }
  std::size_t state_count() const override { return 1; }
  TreeSpec tree() const override { return TreeSpec::full(2); }
};

TEST_CASE("rstar_sup on the letter family") {
  const auto fam = family_from_automaton(NodeAutomaton::letter_value());
  // Levels past the 1 at depth 0 no longer see it.
  CHECK(rstar_sup(*fam, Prefix{1}) == ExtValue(Dyadic(0)));
  std::optional<ExtValue> brute;
  for (std::size_t n = 0; n <= 10; ++n) {
    const ExtValue v = fam->node_inf(n, Prefix{1});
    brute = brute ? min(*brute, v) : v;
  }
  CHECK(*brute == ExtValue(Dyadic(0)));
  CHECK(fam->node_inf(fam->stable_level(Prefix{1}), Prefix{1}) == *brute);

  const auto constant = family_from_automaton(NodeAutomaton::constant(Dyadic(5, 2)));
  for (const Prefix& s : prefixes_up_to(3)) {
    CHECK(rstar_sup(*constant, s) == ExtValue(Dyadic(5, 2)));
  }
  Rng rng(17);
  for (const NodeAutomaton& u : automaton_corpus(rng, 30)) {
    const auto f = discretize(family_from_automaton(u));
    for (const Prefix& s : prefixes_up_to(3)) {
      CHECK(rstar_sup(*f, s) <= f->node_inf(0, s));
    }
  }
}

TEST_CASE("rn_sup on the letter family") {
  const auto fam = family_from_automaton(NodeAutomaton::letter_value());
  CHECK(rn_sup(*fam, 0, Prefix{1}) == ExtValue(Dyadic(1)));
  CHECK_FALSE(rn_sup(*fam, 0, Prefix{1, 0}).has_value());
  // Root: R_0([]) = (-inf, 0), sup 0.
  CHECK(rn_sup(*fam, 0, Prefix{}) == ExtValue(Dyadic(0)));
  const SparseFamily sparse;
  CHECK_FALSE(rn_sup(sparse, 0, Prefix{}).has_value());

  // Direct check of the defining condition on the 2^-3 grid: r is in
  // R_0([1]) iff h_0([1]) > r and h_0([]) <= r.
  std::optional<Dyadic> top;
  for (std::int64_t z = -64; z <= 64; ++z) {
    const ExtValue r(Dyadic(z, 3));
    if (fam->node_inf(0, Prefix{1}) > r && !(fam->node_inf(0, Prefix{}) > r)) {
      top = r.value();
    }
  }
  REQUIRE(top.has_value());
  CHECK(*top + Dyadic(1, 3) == Dyadic(1));
  bool any = false;
  for (std::int64_t z = -64; z <= 64; ++z) {
    const ExtValue r(Dyadic(z, 3));
    any |= fam->node_inf(0, Prefix{1, 0}) > r && !(fam->node_inf(0, Prefix{1}) > r) &&
           !(fam->node_inf(0, Prefix{}) > r);
  }
  CHECK_FALSE(any);
}

TEST_CASE("construct_u uses -length when R is empty") {
  const SparseFamily sparse;
  const ConstructedValue v = construct_u(sparse, Prefix{0, 1, 1});
  CHECK(v.r_empty);
  CHECK(v.value == Dyadic(-3));
  CHECK(construct_u(sparse, Prefix{}).value == Dyadic(0));
}

TEST_CASE("construct_u on a constant family") {
  // g_n = 3/2 for every n: u is 3/2 everywhere, the root through R_0 and
  // every other prefix through R_*.
  const ConstructedFunction u(
      family_from_automaton(NodeAutomaton::constant(Dyadic(3, 1))));
  for (const Prefix& s : prefixes_up_to(4)) CHECK(u(s) == Dyadic(3, 1));
  // Discretized, level 0 rounds up to 2, which only the root sees.
  const ConstructedFunction d =
      construct_from_automaton(NodeAutomaton::constant(Dyadic(3, 1)));
  CHECK(d(Prefix{}) == Dyadic(2));
  for (const Prefix& s : prefixes_up_to(4)) {
    if (!s.empty()) CHECK(d(s) == Dyadic(3, 1));
  }
}

TEST_CASE("construct_u on the letter family, full table") {
  const auto fam = discretize(family_from_automaton(NodeAutomaton::letter_value()));
  for (const Prefix& s : prefixes_up_to(4)) {
    const ConstructedValue v = construct_u(*fam, s);
    const auto brute = oracle::grid_sup_r(*fam, s, 24);
    if (brute) {
      CHECK_FALSE(v.r_empty);
      CHECK(v.value == *brute);
    } else {
      CHECK(v.r_empty);
      CHECK(v.value == Dyadic(-static_cast<std::int64_t>(s.size())));
    }
    // Frozen by the grid scan: 1 exactly when s ends in a 1, else 0.
    const bool ends_in_one = !s.empty() && s.back() == 1;
    CHECK(v.value == Dyadic(ends_in_one ? 1 : 0));
  }
}

TEST_CASE("reduced formulas agree with the grid scan on random families") {
  Rng rng(23);
  AutomatonShape shape;
  shape.max_states = 3;
  for (const NodeAutomaton& m : automaton_corpus(rng, 12, shape)) {
    const auto fam = discretize(family_from_automaton(m));
    for (const Prefix& s : prefixes_up_to(4)) {
      const ConstructedValue v = construct_u(*fam, s);
      const auto brute = oracle::grid_sup_r(*fam, s, 24);
      CHECK(v.r_empty == !brute.has_value());
      if (brute) CHECK(v.value == *brute);
      if (!v.r_empty) CHECK(ExtValue(v.value) <= fam->node_inf(0, s));
    }
  }
}

TEST_CASE("verify_construction on the letter machine") {
  const NodeAutomaton src = NodeAutomaton::letter_value();
  const ConstructedFunction u = construct_from_automaton(src);
  const std::vector<EventuallyPeriodicBranch> branches = {
      EventuallyPeriodicBranch({}, {0, 1}), EventuallyPeriodicBranch({}, {0})};
  const ConstructionReport report = verify_construction(
      u, branches, [&](const auto& x) { return eval_limsup(src, x); });
  CHECK(report.all_equal());
  CHECK(report.checks[0].target == Dyadic(1));
  CHECK(report.checks[1].target == Dyadic(0));
  CHECK(*report.checks[0].constructed == Dyadic(1));
  CHECK(*report.checks[1].constructed == Dyadic(0));
  CHECK(report.summary().rfind("equal on all 2 corpus branches", 0) == 0);
}

TEST_CASE("verify_construction is exact across a random corpus") {
  Rng rng(29);
  AutomatonShape shape;
  shape.max_states = 3;
  const auto branches = enumerate_branches(2, 3, 3);
  for (const NodeAutomaton& src : automaton_corpus(rng, 10, shape)) {
    const ConstructedFunction u = construct_from_automaton(src);
    const ConstructionReport report = verify_construction(
        u, branches, [&](const auto& x) { return oracle::limsup(src, x); });
    CHECK_MESSAGE(report.all_equal(), src.to_json() << " " << report.summary());
  }
}

TEST_CASE("algebra examples") {
  const NodeAutomaton a = NodeAutomaton::letter_value();
  const NodeAutomaton b = one_minus_letter();
  const ConstructedFunction sum = algebra(a, b, AlgebraOp::kSum);
  const ConstructedFunction mn = algebra(a, b, AlgebraOp::kMin);
  const EventuallyPeriodicBranch zeros({}, {0});
  const EventuallyPeriodicBranch alt({}, {0, 1});
  CHECK(constructed_limsup(sum, zeros) == Dyadic(1));
  CHECK(constructed_limsup(sum, alt) == Dyadic(2));
  CHECK(constructed_limsup(mn, alt) == Dyadic(1));
  CHECK(constructed_limsup(mn, zeros) == Dyadic(0));

  // max with a constant below every output of the letter machine.
  const ConstructedFunction dominated =
      algebra(a, NodeAutomaton::constant(Dyadic(-1)), AlgebraOp::kMax);
  for (const auto& x : enumerate_branches(2, 2, 2)) {
    CHECK(constructed_limsup(dominated, x) == eval_limsup(a, x));
  }
}

TEST_CASE("algebra realizes op(f1, f2) on random pairs") {
  Rng rng(31);
  AutomatonShape shape;
  shape.max_states = 3;
  const auto branches = enumerate_branches(2, 2, 2);
  for (int round = 0; round < 6; ++round) {
    const NodeAutomaton a = random_automaton(rng, shape);
    const NodeAutomaton b = random_automaton(rng, shape);
    for (AlgebraOp op : {AlgebraOp::kSum, AlgebraOp::kMin, AlgebraOp::kMax}) {
      const ConstructedFunction u = algebra(a, b, op);
      const ConstructionReport report =
          verify_construction(u, branches, [&](const auto& x) {
            const Dyadic fa = oracle::limsup(a, x);
            const Dyadic fb = oracle::limsup(b, x);
            switch (op) {
              case AlgebraOp::kSum: return fa + fb;
              case AlgebraOp::kMin: return min(fa, fb);
              case AlgebraOp::kMax: return max(fa, fb);
            }
            return fa;
          });
      CHECK_MESSAGE(report.all_equal(), report.summary());
    }
  }
}

TEST_CASE("constructed function cache is safe under concurrent readers") {
  const ConstructedFunction u = construct_from_automaton(NodeAutomaton::letter_value());
  const auto all = prefixes_up_to(6);
  std::vector<std::thread> workers;
  std::vector<std::vector<Dyadic>> seen(4);
  for (std::size_t w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      for (const Prefix& s : all) seen[w].push_back(u(s));
    });
  }
  for (auto& t : workers) t.join();
  for (std::size_t w = 1; w < 4; ++w) CHECK(seen[w] == seen[0]);
  CHECK(u.cache_size() == all.size());
}

TEST_CASE("minimization recovers small machines") {
  const ConstructedFunction u = construct_from_automaton(NodeAutomaton::letter_value());
  const auto result = minimize_to_automaton(u, 2);
  REQUIRE(result.has_value());
  for (const Prefix& s : prefixes_up_to(8)) {
    if (s.empty()) continue;
    CHECK(result->automaton.value(s) == u(s));
  }
  for (const auto& x : enumerate_branches(2, 3, 3)) {
    CHECK(eval_limsup(result->automaton, x) == eval_limsup(NodeAutomaton::letter_value(), x));
  }
}

}  // namespace
}  // namespace limsup
