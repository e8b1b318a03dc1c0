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

#include "limsup/runner.h"

#include <fstream>
#include <sstream>

namespace limsup {

using json = nlohmann::json;

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

PlayOptions play_options(const ConfiguredGame& g, std::size_t horizon) {
  PlayOptions po;
  po.horizon = horizon;
  po.tree = g.tree;
  if (g.payoff->automaton()) po.payoff_automaton = &*g.payoff->automaton();
  return po;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ConfiguredGame build_configured_game(const ExperimentConfig& c, BuildContext& ctx) {
  ConfiguredGame g;
  g.kind = build_game(c);
  if (c.function.is_null()) throw ConfigError("config has no function");
  g.payoff = build_payoff(c.function, ctx);
  if (g.payoff->automaton()) {
    ctx.payoff_automaton = *g.payoff->automaton();
    g.tree = g.payoff->automaton()->tree();
  }
  if (c.player_one.is_null() || c.player_two.is_null()) {
    throw ConfigError("config needs player_one and player_two");
  }
  g.one = build_player_one(c.player_one, ctx);
  g.two = build_player_two(c.player_two, ctx);
  return g;
}

PlayResult run_play(const ExperimentConfig& c, BuildContext& ctx) {
  ConfiguredGame g = build_configured_game(c, ctx);
  PlayResult r;
  r.kind = g.kind;
  r.trace = play_in_place(g.kind, *g.one, *g.two, play_options(g, c.horizon));
  if (r.trace.fault || r.trace.lasso) {
    r.verdict = check_win(r.trace, *g.payoff, g.kind);
  } else {
    r.verdict = undecided_verdict(r.trace, "no certified lasso within the horizon");
  }
  return r;
}

PlayResult run_verify(const ExperimentConfig& c, BuildContext& ctx) {
  ConfiguredGame g = build_configured_game(c, ctx);
  if (g.one->unbounded() || g.two->unbounded()) {
    throw ConfigError("verify needs finite-state strategies; " +
                      (g.one->unbounded() ? g.one->name() : g.two->name()) +
                      " is unbounded (use play)");
  }
  PlayResult r;
  r.kind = g.kind;
  r.verdict = exact_verdict(g.kind, *g.one, *g.two, *g.payoff, c.cap, g.tree);
  PlayOptions po = play_options(g, c.cap);
  po.stop_at_lasso = true;
  po.extra_periods = 1;
  r.trace = play(g.kind, *g.one, *g.two, po);
  return r;
}

ConstructResult run_construct(const ExperimentConfig& c, const BuildContext& ctx) {
  const Pipeline p = build_pipeline(c.construct, ctx);
  const ConstructedFunction u(p.family);
  const auto branches = enumerate_branches(p.arity, p.max_stem, p.max_cycle);
  ConstructResult r;
  r.report = verify_construction(u, branches, p.target);
  r.minimize = p.minimize;
  if (p.minimize) r.machine = minimize_to_automaton(u, p.arity);

  json& j = r.report_json;
  j["summary"] = r.report.summary();
  j["all_equal"] = r.report.all_equal();
  j["max_stabilization_level"] = r.report.max_stabilization_level;
  j["branches"] = json::array();
  for (const auto& check : r.report.checks) {
    json b{{"branch", check.branch.to_string()},
           {"f", check.target.to_string()},
           {"horizon", check.horizon}};
    b["limsup_u"] = check.constructed ? json(check.constructed->to_string())
                                      : json(nullptr);
    b["equal"] = check.equal();
    j["branches"].push_back(b);
  }
  j["automaton"] = r.machine ? json::parse(r.machine->automaton.to_json())
                             : json(nullptr);
  return r;
}

void write_trace_files(const ExperimentConfig& c, const PlayResult& r) {
  if (c.trace == TraceFormat::kNone) return;
  const std::filesystem::path dir = c.out;
  std::filesystem::create_directories(dir);
  const std::string sidecar = trace_sidecar_json(r.trace, r.verdict, r.kind);
  if (c.trace == TraceFormat::kCsv) {
    std::ostringstream csv;
    write_trace_csv(r.trace, csv);
    write_text(dir / "trace.csv", csv.str());
    write_text(dir / "trace.json", sidecar + "\n");
    return;
  }
  json j = json::parse(sidecar);
  json rounds = json::array();
  for (const auto& round : r.trace.rounds) {
    json row{{"x", round.x}, {"v", round.move.v.to_string()}};
    if (round.move.w) row["w"] = round.move.w->to_string();
    rounds.push_back(row);
  }
  j["trace"] = rounds;
  write_text(dir / "trace.json", j.dump(2) + "\n");
}

void write_construct_files(const ExperimentConfig& c, const ConstructResult& r) {
  if (c.trace == TraceFormat::kNone) return;
  const std::filesystem::path dir = c.out;
  std::filesystem::create_directories(dir);
  write_text(dir / "report.json", r.report_json.dump(2) + "\n");
  if (r.machine) write_text(dir / "u.json", r.machine->automaton.to_json() + "\n");
}

}  // namespace limsup
