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

#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "limsup/dyadic.h"
#include "limsup/random.h"
#include "limsup/tree.h"

namespace limsup {
namespace {

Dyadic random_dyadic(Rng& rng, std::uint32_t max_exp = 8) {
  const auto e = static_cast<std::uint32_t>(uniform_int(rng, 0, max_exp));
  const auto z = static_cast<std::int64_t>(uniform_int(rng, 0, 4000)) - 2000;
  return Dyadic(z, e);
}

// Least z / 2^n >= v by scanning z.
Dyadic scan_ceil(const Dyadic& v, std::uint32_t n) {
  for (std::int64_t z = -4096; z <= 4096; ++z) {
    if (Dyadic(z, n) >= v) return Dyadic(z, n);
  }
  FAIL("scan range too small");
  return {};
}

TEST_CASE("dyadic values are stored normalized") {
  CHECK(Dyadic(4, 3) == Dyadic(1, 1));
  CHECK(Dyadic(4, 3).numerator() == 1);
  CHECK(Dyadic(4, 3).exponent() == 1);
  CHECK(Dyadic(0, 7).exponent() == 0);
  CHECK(Dyadic(-6, 2).to_string() == "-3/2^1");
  CHECK(Dyadic(1).to_string() == "1/2^0");
}

TEST_CASE("dyadic parse and print round trip") {
  CHECK(Dyadic::parse("3/2^1") == Dyadic(3, 1));
  CHECK(Dyadic::parse("8/2^4") == Dyadic(1, 1));
  CHECK(Dyadic::parse("-5") == Dyadic(-5));
  CHECK_THROWS_AS(Dyadic::parse("1/3"), std::invalid_argument);
  CHECK_THROWS_AS(Dyadic::parse(""), std::invalid_argument);
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Dyadic d = random_dyadic(rng);
    CHECK(Dyadic::parse(d.to_string()) == d);
  }
}

TEST_CASE("dyadic arithmetic is exact") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Dyadic a = random_dyadic(rng);
    const Dyadic b = random_dyadic(rng);
    CHECK((a + b) - b == a);
    CHECK(a + b == b + a);
    CHECK(-(-a) == a);
    CHECK(min(a, a) == a);
    CHECK(max(a, b) == max(b, a));
    CHECK(min(a, b) == min(b, a));
    CHECK(min(a, b) <= max(a, b));
  }
  CHECK(Dyadic(1, 1) + Dyadic(1, 2) == Dyadic(3, 2));
  CHECK(Dyadic(3, 2).times(4) == Dyadic(3));
}

TEST_CASE("dyadic overflow is reported") {
  const Dyadic big(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(big + Dyadic(1), std::overflow_error);
}

TEST_CASE("ceil to grid matches a scan") {
  CHECK(Dyadic(3, 3).ceil_to_grid(1) == scan_ceil(Dyadic(3, 3), 1));
  CHECK(Dyadic(3, 3).ceil_to_grid(1) == Dyadic(1, 1));
  CHECK(Dyadic(1, 1).ceil_to_grid(1) == Dyadic(1, 1));
  CHECK(Dyadic(-3, 3).ceil_to_grid(2) == scan_ceil(Dyadic(-3, 3), 2));
  CHECK(Dyadic(-3, 3).ceil_to_grid(2) == Dyadic(-1, 2));

  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const Dyadic v = random_dyadic(rng, 12);
    const auto n = static_cast<std::uint32_t>(uniform_int(rng, 0, 10));
    const Dyadic c = v.ceil_to_grid(n);
    CHECK(c.on_grid(n));
    CHECK(c - v >= Dyadic(0));
    CHECK(c - v < Dyadic::pow2_neg(n));
  }
}

TEST_CASE("extended values order infinities around finite values") {
  const ExtValue lo = ExtValue::minus_infinity();
  const ExtValue hi = ExtValue::plus_infinity();
  const ExtValue mid(Dyadic(-1000));
  CHECK(lo < mid);
  CHECK(mid < hi);
  CHECK(lo < hi);
  CHECK(ExtValue(Dyadic(1, 1)) < ExtValue(Dyadic(1)));
  CHECK((lo + mid).is_minus_infinity());
  CHECK_THROWS(lo + hi);
  CHECK(max(lo, mid) == mid);
  CHECK(lo.to_string() == "-inf");
  CHECK(hi.to_string() == "+inf");
}

TEST_CASE("prefix extend and parent") {
  CHECK(extend({}, 0) == Prefix{0});
  CHECK(extend({0, 1}, 1) == Prefix{0, 1, 1});
  CHECK_THROWS(parent({}));
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Prefix s;
    const auto len = uniform_int(rng, 0, 8);
    for (std::uint64_t k = 0; k < len; ++k) s.push_back(uniform_int(rng, 0, 9));
    const Letter a = uniform_int(rng, 0, 9);
    const Prefix e = extend(s, a);
    CHECK(e.size() == s.size() + 1);
    CHECK(parent(e) == s);
    CHECK(is_prefix_of(s, e));
  }
  CHECK(prefix_to_string(Prefix{3, 0, 12}) == "3,0,12");
  CHECK(parse_prefix("3,0,12") == Prefix{3, 0, 12});
  CHECK(parse_prefix("").empty());
}

TEST_CASE("branch prefixes unroll the cycle") {
  const EventuallyPeriodicBranch zeros({}, {0});
  CHECK(branch_prefix(zeros, 2) == Prefix{0, 0, 0});
  const EventuallyPeriodicBranch x({1}, {0, 1});
  CHECK(branch_prefix(x, 4) == Prefix{1, 0, 1, 0, 1});
  for (std::size_t t = 0; t < 20; ++t) {
    CHECK(is_prefix_of(branch_prefix(x, t), branch_prefix(x, t + 1)));
    CHECK(branch_prefix(x, t).size() == t + 1);
  }
  CHECK_THROWS(EventuallyPeriodicBranch({1}, {}));
  CHECK(x.to_string() == "stem=1;cycle=0,1");
  CHECK(EventuallyPeriodicBranch::parse("stem=;cycle=0,1") ==
        EventuallyPeriodicBranch({}, {0, 1}));
  CHECK(EventuallyPeriodicBranch({0, 1, 0, 1}, {0, 1}).canonical() ==
        EventuallyPeriodicBranch({}, {0, 1}));
}

TEST_CASE("branches leaving the tree are rejected with the offending prefix") {
  const TreeSpec binary = TreeSpec::full(2);
  try {
    EventuallyPeriodicBranch::in_tree({0, 1}, {1, 2}, binary);
    FAIL("expected rejection");
  } catch (const BranchOutsideTree& e) {
    CHECK(e.offending_prefix() == Prefix{0, 1, 1, 2});
  }
  CHECK_NOTHROW(EventuallyPeriodicBranch::in_tree({7}, {9}, TreeSpec::full_naturals()));
}

TEST_CASE("sampled tree members have children in the tree") {
  // No two consecutive ones.
  const TreeSpec fib(
      [](std::span<const Letter> s) {
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (s[i] > 1 || (i > 0 && s[i] == 1 && s[i - 1] == 1)) return false;
        }
        return true;
      },
      [](std::span<const Letter>) -> Letter { return 0; });
  Rng rng(9);
  for (const TreeSpec* tree : {&fib}) {
    CHECK(tree->contains(Prefix{}));
    for (int i = 0; i < 1000; ++i) {
      Prefix s;
      const auto len = uniform_int(rng, 0, 12);
      while (s.size() < len) {
        Prefix c = extend(s, uniform_int(rng, 0, 1));
        s = tree->contains(c) ? c : extend(s, tree->child(s));
      }
      REQUIRE(tree->contains(s));
      CHECK(tree->contains(extend(s, tree->child(s))));
    }
  }
  const TreeSpec full = TreeSpec::full(3);
  CHECK(full.contains(Prefix{2, 0, 1}));
  CHECK_FALSE(full.contains(Prefix{3}));
  const Prefix two{2, 2};
  CHECK(full.contains(extend(two, full.child(two))));
}

TEST_CASE("enumerated branches are distinct and sized as requested") {
  const auto all = enumerate_branches(2, 3, 3);
  CHECK(all.size() == (1 + 2 + 4 + 8) * (2 + 4 + 8));
  for (const auto& x : all) {
    CHECK(x.stem().size() <= 3);
    CHECK(!x.cycle().empty());
    CHECK(x.cycle().size() <= 3);
  }
}

TEST_CASE("seed splitter streams are reproducible and independent") {
  const SeedSplitter a(42);
  const SeedSplitter b(42);
  Rng ra = a.stream("corpus");
  Rng rb = b.stream("corpus");
  for (int i = 0; i < 10; ++i) CHECK(ra() == rb());
  CHECK(a.derive("corpus") != a.derive("opponents"));
  CHECK(SeedSplitter(1).derive("corpus") != SeedSplitter(2).derive("corpus"));
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    const auto v = uniform_int(r, 3, 5);
    CHECK(v >= 3);
    CHECK(v <= 5);
  }
}

}  // namespace
}  // namespace limsup
