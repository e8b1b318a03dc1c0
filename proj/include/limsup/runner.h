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

#ifndef LIMSUP_RUNNER_H_
#define LIMSUP_RUNNER_H_

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "limsup/config.h"

namespace limsup {

// A game built from a config, ready to play.
struct ConfiguredGame {
  GameKind kind;
  std::optional<Payoff> payoff;
  PlayerOnePtr one;
  PlayerTwoPtr two;
  std::optional<TreeSpec> tree;
};

// Sets ctx.payoff_automaton when the payoff is an automaton.
ConfiguredGame build_configured_game(const ExperimentConfig& c, BuildContext& ctx);

struct PlayResult {
  RunTrace trace;
  Verdict verdict;
  GameKind kind;
};

// Plays to the horizon. The verdict is exact when a lasso is certified.
PlayResult run_play(const ExperimentConfig& c, BuildContext& ctx);
// Exact verdict within c.cap rounds. Throws ConfigError for unbounded
// strategies. The returned trace stops at the lasso plus one period.
PlayResult run_verify(const ExperimentConfig& c, BuildContext& ctx);

struct ConstructResult {
  ConstructionReport report;
  bool minimize = false;  // whether minimization was requested
  std::optional<MinimizationResult> machine;
  nlohmann::json report_json;
};
ConstructResult run_construct(const ExperimentConfig& c, const BuildContext& ctx);

// Writes the trace files chosen by c.trace into c.out.
void write_trace_files(const ExperimentConfig& c, const PlayResult& r);
// Writes report.json, and u.json when u was minimized, into c.out.
void write_construct_files(const ExperimentConfig& c, const ConstructResult& r);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace limsup

#endif  // LIMSUP_RUNNER_H_
