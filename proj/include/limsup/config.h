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

#ifndef LIMSUP_CONFIG_H_
#define LIMSUP_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "limsup/construct.h"
#include "limsup/games.h"
#include "limsup/strategies.h"

namespace limsup {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class TraceFormat { kCsv, kJson, kNone };
TraceFormat parse_trace_format(const std::string& text);
std::string to_string(TraceFormat f);

// One experiment. Function sources and strategy descriptors stay as JSON
// until they are built, so a config serializes back to what was read.
//
//   {"game": "gamma" | "gamma_prime" | "gamma_restricted",
//    "value_set": ["0", "1"],                       (gamma_restricted only)
//    "function": {"automaton": {...} | "path.json"} | {"instance": name},
//    "player_one": {"kind": ...}, "player_two": {"kind": ...},
//    "horizon": 1000, "cap": 100000, "seed": 0,
//    "out": "out", "trace": "csv" | "json" | "none",
//    "construct": {...}}                            (construct only)
struct ExperimentConfig {
  std::string game = "gamma";
  std::vector<Dyadic> value_set;
  nlohmann::json function = nullptr;
  nlohmann::json player_one = nullptr;
  nlohmann::json player_two = nullptr;
  std::size_t horizon = 1000;
  std::size_t cap = 100000;
  std::uint64_t seed = 0;
  std::string out = "out";
  TraceFormat trace = TraceFormat::kCsv;
  nlohmann::json construct = nullptr;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& c);

// Resolves relative file references against the config's directory.
struct BuildContext {
  std::filesystem::path base_dir = ".";
  std::uint64_t seed = 0;
  std::optional<NodeAutomaton> payoff_automaton;
};

GameKind build_game(const ExperimentConfig& c);
NodeAutomaton load_automaton(const nlohmann::json& ref, const BuildContext& ctx);
Payoff build_payoff(const nlohmann::json& function, const BuildContext& ctx);

// Descriptors:
//   I:  constant {letter}, branch {branch}, random_fsm {states, values, seed,
//       letters}, copycat, approx_copycat {max_stage}, meager_dense
//       {instance}, oscillation {instance}, lift {inner, values},
//       relabel {inner, mapping: [[d, i(d)], ...]}
//   II: from_u {automaton}, constant {v, w}, cyclic {moves}, pair {f, g},
//       random_fsm {states, values, seed, letters, pairs}
PlayerOnePtr build_player_one(const nlohmann::json& d, const BuildContext& ctx);
PlayerTwoPtr build_player_two(const nlohmann::json& d, const BuildContext& ctx);

Dyadic dyadic_from_json(const nlohmann::json& j);

// The function built by a construct block:
//   {"source": {"automaton": A} | {"levels": [{"automaton": A, "depth": d}]}
//              | {"algebra": {"op": "sum"|"min"|"max", "left": A, "right": B}},
//    "stages": ["regularize"?, "discretize"?, "construct_u"],
//    "branches": {"max_stem": 3, "max_cycle": 3},
//    "minimize": true}
struct Pipeline {
  FamilyPtr family;
  BranchFunction target;  // f, for verification
  std::uint64_t arity = 2;
  std::size_t max_stem = 3;
  std::size_t max_cycle = 3;
  bool minimize = true;
};
Pipeline build_pipeline(const nlohmann::json& construct, const BuildContext& ctx);

}  // namespace limsup

#endif  // LIMSUP_CONFIG_H_
