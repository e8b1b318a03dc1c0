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

// limsup: evaluate, play, verify and construct limsup functions, and run the
// acceptance suite.
//
//   limsup eval machine.json "stem=;cycle=0,1"
//   limsup play --config run.json --trace csv --out out/
//   limsup verify --config run.json --cap 100000
//   limsup construct --config pipeline.json
//   limsup suite --seed 7 --jobs 4

#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "limsup/config.h"
#include "limsup/runner.h"
#include "limsup/suite.h"

namespace {

using limsup::ConfigError;
using limsup::ExperimentConfig;
using json = nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> cap;
  std::optional<std::string> out;
  std::optional<std::string> trace;
};

void add_flags(CLI::App* cmd, Flags& f, bool needs_config) {
  auto* c = cmd->add_option("--config", f.config, "experiment config (JSON)");
  if (needs_config) c->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "override the config seed");
  cmd->add_option("--horizon", f.horizon, "rounds to play");
  cmd->add_option("--cap", f.cap, "round cap for exact verdicts");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--trace", f.trace, "trace format")
      ->check(CLI::IsMember({"csv", "json", "none"}));
}

ExperimentConfig load(const Flags& f, limsup::BuildContext& ctx) {
  ExperimentConfig c = limsup::parse_config(limsup::read_text_file(f.config));
  if (f.seed) c.seed = *f.seed;
  if (f.horizon) c.horizon = *f.horizon;
  if (f.cap) c.cap = *f.cap;
  if (f.out) c.out = *f.out;
  if (f.trace) c.trace = limsup::parse_trace_format(*f.trace);
  // Re-validate overrides.
  c = limsup::config_from_json(limsup::config_to_json(c));
  ctx.base_dir = std::filesystem::path(f.config).parent_path();
  if (ctx.base_dir.empty()) ctx.base_dir = ".";
  ctx.seed = c.seed;
  return c;
}

int report_fault(const limsup::Verdict& v) {
  std::cout << limsup::verdict_json(v) << "\n";
  std::cerr << limsup::fault_json(*v.fault) << "\n";
  return kUsage;
}

int cmd_eval(const std::string& file, const std::string& branch) {
  const auto u = limsup::NodeAutomaton::from_json(limsup::read_text_file(file));
  const auto parsed = limsup::EventuallyPeriodicBranch::parse(branch);
  const auto x = limsup::EventuallyPeriodicBranch::in_tree(
      parsed.stem(), parsed.cycle(), u.tree());
  const auto lasso = limsup::lasso_summary(u, x);
  std::cout << limsup::eval_limsup(u, x).to_string() << "\n";
  std::cout << "lasso transient=" << lasso.transient_outputs.size()
            << " cycle=[";
  for (std::size_t i = 0; i < lasso.cycle_outputs.size(); ++i) {
    std::cout << (i ? "," : "") << lasso.cycle_outputs[i].to_string();
  }
  std::cout << "]\n";
  return kPass;
}

int cmd_play(const Flags& f) {
  limsup::BuildContext ctx;
  const ExperimentConfig c = load(f, ctx);
  const limsup::PlayResult r = limsup::run_play(c, ctx);
  limsup::write_trace_files(c, r);
  if (r.verdict.fault) return report_fault(r.verdict);
  std::cout << limsup::verdict_json(r.verdict) << "\n";
  return kPass;
}

int cmd_verify(const Flags& f) {
  limsup::BuildContext ctx;
  const ExperimentConfig c = load(f, ctx);
  const limsup::PlayResult r = limsup::run_verify(c, ctx);
  limsup::write_trace_files(c, r);
  if (r.verdict.fault) return report_fault(r.verdict);
  std::cout << limsup::verdict_json(r.verdict) << "\n";
  return r.verdict.exact() ? kPass : kFail;
}

int cmd_construct(const Flags& f) {
  limsup::BuildContext ctx;
  const ExperimentConfig c = load(f, ctx);
  const limsup::ConstructResult r = limsup::run_construct(c, ctx);
  limsup::write_construct_files(c, r);
  std::cout << r.report.summary() << "\n";
  if (r.machine) {
    std::cout << "u realized by a " << r.machine->automaton.num_states()
              << "-state automaton\n";
  } else if (r.minimize) {
    std::cout << "u not minimized to an automaton\n";
  }
  return r.report.all_equal() ? kPass : kFail;
}

int cmd_suite(std::uint64_t seed, const std::optional<std::string>& tamper,
              std::size_t jobs, const std::optional<std::string>& filter,
              bool as_json) {
  limsup::SuiteOptions opt;
  opt.seed = seed;
  opt.tamper = tamper;
  opt.jobs = jobs;
  opt.filter = filter;
  const limsup::SuiteReport r = limsup::run_suite(opt);
  std::cout << (as_json ? r.json() + "\n" : r.text());
  return r.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limsup functions and their games"};
  app.require_subcommand(1);

  std::string eval_file, eval_branch;
  auto* eval = app.add_subcommand("eval", "exact limsup of an automaton on a branch");
  eval->add_option("automaton", eval_file, "automaton JSON")->required()
      ->check(CLI::ExistingFile);
  eval->add_option("branch", eval_branch, "\"stem=a,b;cycle=c,d\"")->required();

  Flags play_flags, verify_flags, construct_flags;
  auto* play = app.add_subcommand("play", "play a configured game to the horizon");
  add_flags(play, play_flags, true);
  auto* verify = app.add_subcommand("verify", "exact verdict for finite-state strategies");
  add_flags(verify, verify_flags, true);
  auto* construct = app.add_subcommand("construct", "build u from a pipeline and verify it");
  add_flags(construct, construct_flags, true);

  std::uint64_t suite_seed = limsup::SuiteOptions{}.seed;
  std::optional<std::string> tamper, filter;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  bool as_json = false;
  auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
  suite->add_option("--seed", suite_seed, "corpus seed");
  suite->add_option("--tamper", tamper, "corrupt the fixture of a criterion");
  suite->add_option("--jobs", jobs, "criteria run in parallel");
  suite->add_option("--filter", filter, "only criteria whose name contains this");
  suite->add_flag("--json", as_json, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_file, eval_branch);
    if (*play) return cmd_play(play_flags);
    if (*verify) return cmd_verify(verify_flags);
    if (*construct) return cmd_construct(construct_flags);
    if (*suite) return cmd_suite(suite_seed, tamper, jobs, filter, as_json);
  } catch (const limsup::StabilizationError& e) {
    std::cerr << "error: " << e.what() << " (prefix "
              << limsup::prefix_to_string(e.offending_prefix()) << ")\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
