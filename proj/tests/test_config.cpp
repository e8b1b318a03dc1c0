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


#include <random>

#include "doctest.h"
#include "limsup/config.h"
#include "limsup/corpus.h"

namespace limsup {
namespace {

using json = nlohmann::json;

Dyadic random_dyadic(Rng& rng) {
  std::uniform_int_distribution<std::int64_t> num(-64, 64);
  std::uniform_int_distribution<std::uint32_t> exp(0, 6);
  return Dyadic(num(rng), exp(rng));
}

json random_player_two(Rng& rng, const NodeAutomaton& u) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      return {{"kind", "from_u"}, {"automaton", json::parse(u.to_json())}};
    case 1:
      return {{"kind", "constant"}, {"v", random_dyadic(rng).to_string()}};
    case 2:
      return {{"kind", "cyclic"},
              {"moves", {random_dyadic(rng).to_string(), 1}}};
    default:
      return {{"kind", "random_fsm"},
              {"states", 3},
              {"seed", rng() >> 12},
              {"values", {"0", "1/2^1", "1"}}};
  }
}

ExperimentConfig random_config(Rng& rng) {
  ExperimentConfig c;
  const int game = std::uniform_int_distribution<int>(0, 2)(rng);
  c.game = game == 0 ? "gamma" : game == 1 ? "gamma_prime" : "gamma_restricted";
  if (game == 2) c.value_set = {Dyadic(0), Dyadic(1, 1), Dyadic(1)};
  const NodeAutomaton u = random_automaton(rng);
  c.function = {{"automaton", json::parse(u.to_json())}};
  c.player_one = {{"kind", "random_fsm"}, {"states", 2 + rng() % 3},
                  {"seed", rng() >> 12}};
  c.player_two = random_player_two(rng, u);
  c.horizon = 1 + rng() % 5000;
  c.cap = 1 + rng() % 100000;
  c.seed = rng();
  c.out = "out/run" + std::to_string(rng() % 100);
  c.trace = static_cast<TraceFormat>(rng() % 3);
  if (rng() % 2) {
    c.construct = {{"source", {{"automaton", json::parse(u.to_json())}}},
                   {"stages", {"discretize", "construct_u"}}};
  }
  return c;
}

TEST_CASE("random configs round trip through JSON text") {
  Rng rng = SeedSplitter(5).stream("config");
  for (int i = 0; i < 100; ++i) {
    const ExperimentConfig c = random_config(rng);
    const std::string text = serialize_config(c);
    const ExperimentConfig back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize_config(back) == text);
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_config(R"({"horizon": 10, "colour": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"horizon": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"horizon": 5000000})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"trace": "xml"})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  const ExperimentConfig c = parse_config("{}");
  CHECK(c.horizon == 1000);
  CHECK(c.trace == TraceFormat::kCsv);
}

TEST_CASE("dyadic literals") {
  CHECK(dyadic_from_json(3) == Dyadic(3));
  CHECK(dyadic_from_json("-3/2^2") == Dyadic(-3, 2));
  CHECK_THROWS_AS(dyadic_from_json("1/3"), ConfigError);
  CHECK_THROWS_AS(dyadic_from_json(0.5), ConfigError);
}

TEST_CASE("descriptors build the named strategies") {
  BuildContext ctx;
  ctx.seed = 3;
  CHECK(build_player_one({{"kind", "copycat"}}, ctx)->unbounded() == false);
  CHECK(build_player_one({{"kind", "meager_dense"}}, ctx)->unbounded());
  CHECK_THROWS_AS(build_player_one({{"kind", "telepathy"}}, ctx), ConfigError);
  CHECK_THROWS_AS(build_player_two({{"kind", "from_u"}}, ctx), ConfigError);
  CHECK_THROWS_AS(
      build_player_one({{"kind", "relabel"},
                        {"inner", {{"kind", "constant"}}},
                        {"mapping", {{"1", "0"}, {"0", "1"}}}},
                       ctx),
      ConfigError);

  // Unseeded random machines derive their seed from the run seed.
  const json d = {{"kind", "random_fsm"}, {"states", 4}};
  const auto a = build_player_two(d, ctx);
  const auto b = build_player_two(d, ctx);
  for (Letter x : {0, 1, 1, 0, 1}) CHECK(a->move(x) == b->move(x));
}

TEST_CASE("pipelines") {
  Rng rng = SeedSplitter(9).stream("pipeline");
  const NodeAutomaton u = random_automaton(rng);
  const BuildContext ctx;
  const json source = {{"automaton", json::parse(u.to_json())}};
  const Pipeline p = build_pipeline(
      {{"source", source}, {"stages", {"discretize", "construct_u"}}}, ctx);
  CHECK(p.arity == u.num_letters());
  const auto x = EventuallyPeriodicBranch::parse("stem=1;cycle=0,1");
  CHECK(p.target(x) == eval_limsup(u, x));

  CHECK_THROWS_AS(build_pipeline({{"source", source}, {"stages", json::array()}}, ctx),
                  ConfigError);
  CHECK_THROWS_AS(
      build_pipeline({{"source", source}, {"stages", {"construct_u", "discretize"}}},
                     ctx),
      ConfigError);
  CHECK_THROWS_AS(
      build_pipeline({{"source", {{"levels", json::array()}}},
                      {"stages", {"construct_u"}}},
                     ctx),
      ConfigError);
}

}  // namespace
}  // namespace limsup
