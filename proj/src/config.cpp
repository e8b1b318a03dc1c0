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

#include "limsup/config.h"

#include <fstream>
#include <set>
#include <sstream>

namespace limsup {

using json = nlohmann::json;

namespace {

const std::set<std::string> kConfigKeys = {
    "game",  "value_set", "function", "player_one", "player_two", "horizon",
    "cap",   "seed",      "out",      "trace",      "construct"};

const json& field(const json& d, const char* key, const char* what) {
  if (!d.is_object() || !d.contains(key)) {
    throw ConfigError(std::string(what) + ": missing \"" + key + "\"");
  }
  return d.at(key);
}

template <typename T>
T get_or(const json& d, const char* key, T fallback) {
  if (!d.is_object() || !d.contains(key)) return fallback;
  try {
    return d.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

std::vector<Dyadic> dyadic_list(const json& j) {
  if (!j.is_array()) throw ConfigError("expected a list of dyadics");
  std::vector<Dyadic> out;
  for (const json& v : j) out.push_back(dyadic_from_json(v));
  return out;
}

PlayerTwoMove move_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw ConfigError("a pair move needs two values");
    return {dyadic_from_json(j[0]), dyadic_from_json(j[1])};
  }
  return {dyadic_from_json(j), std::nullopt};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::uint64_t stream_seed(const json& d, const BuildContext& ctx,
                          const char* stream) {
  if (d.contains("seed")) return get_or<std::uint64_t>(d, "seed", 0);
  return SeedSplitter(ctx.seed).derive(stream);
}

const std::string& kind_of(const json& d, const char* who) {
  const json& k = field(d, "kind", who);
  if (!k.is_string()) throw ConfigError(std::string(who) + ": kind must be a string");
  return k.get_ref<const std::string&>();
}

AlgebraOp parse_op(const std::string& op) {
  if (op == "sum") return AlgebraOp::kSum;
  if (op == "min") return AlgebraOp::kMin;
  if (op == "max") return AlgebraOp::kMax;
  throw ConfigError("unknown algebra op \"" + op + "\"");
}

Dyadic apply(AlgebraOp op, const Dyadic& a, const Dyadic& b) {
  switch (op) {
    case AlgebraOp::kSum: return a + b;
    case AlgebraOp::kMin: return min(a, b);
    case AlgebraOp::kMax: return max(a, b);
  }
  return a;
}

}  // namespace

TraceFormat parse_trace_format(const std::string& text) {
  if (text == "csv") return TraceFormat::kCsv;
  if (text == "json") return TraceFormat::kJson;
  if (text == "none") return TraceFormat::kNone;
  throw ConfigError("trace format must be csv, json or none, not \"" + text +
                    "\"");
}

std::string to_string(TraceFormat f) {
  switch (f) {
    case TraceFormat::kCsv: return "csv";
    case TraceFormat::kJson: return "json";
    case TraceFormat::kNone: return "none";
  }
  return "none";
}

Dyadic dyadic_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return Dyadic::integer(j.get<std::int64_t>());
    if (j.is_string()) return Dyadic::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("expected a dyadic (integer or \"z/2^n\"), got " + j.dump());
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kConfigKeys.contains(key)) {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
  }
  ExperimentConfig c;
  c.game = get_or<std::string>(j, "game", c.game);
  if (j.contains("value_set")) c.value_set = dyadic_list(j.at("value_set"));
  if (j.contains("function")) c.function = j.at("function");
  if (j.contains("player_one")) c.player_one = j.at("player_one");
  if (j.contains("player_two")) c.player_two = j.at("player_two");
  c.horizon = get_or<std::size_t>(j, "horizon", c.horizon);
  c.cap = get_or<std::size_t>(j, "cap", c.cap);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  c.out = get_or<std::string>(j, "out", c.out);
  c.trace = parse_trace_format(get_or<std::string>(j, "trace", "csv"));
  if (j.contains("construct")) c.construct = j.at("construct");
  if (c.horizon == 0 || c.horizon > kMaxRounds) {
    throw ConfigError("horizon must be in [1, " + std::to_string(kMaxRounds) +
                      "]");
  }
  if (c.cap == 0 || c.cap > kMaxRounds) {
    throw ConfigError("cap must be in [1, " + std::to_string(kMaxRounds) + "]");
  }
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["game"] = c.game;
  if (!c.value_set.empty()) {
    json vs = json::array();
    for (const Dyadic& d : c.value_set) vs.push_back(d.to_string());
    j["value_set"] = vs;
  }
  if (!c.function.is_null()) j["function"] = c.function;
  if (!c.player_one.is_null()) j["player_one"] = c.player_one;
  if (!c.player_two.is_null()) j["player_two"] = c.player_two;
  j["horizon"] = c.horizon;
  j["cap"] = c.cap;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["trace"] = to_string(c.trace);
  if (!c.construct.is_null()) j["construct"] = c.construct;
  return j;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

std::string serialize_config(const ExperimentConfig& c) {
  return config_to_json(c).dump(2);
}

GameKind build_game(const ExperimentConfig& c) {
  if (c.game == "gamma") return GameKind::gamma();
  if (c.game == "gamma_prime") return GameKind::gamma_prime();
  if (c.game == "gamma_restricted") {
    if (c.value_set.empty()) {
      throw ConfigError("gamma_restricted needs a nonempty value_set");
    }
    return GameKind::restricted_to(ValueSet::finite(c.value_set));
  }
  throw ConfigError("unknown game \"" + c.game + "\"");
}

NodeAutomaton load_automaton(const json& ref, const BuildContext& ctx) {
  try {
    if (ref.is_object()) return NodeAutomaton::from_json(ref.dump());
    if (ref.is_string()) {
      std::filesystem::path p = ref.get<std::string>();
      if (p.is_relative()) p = ctx.base_dir / p;
      return NodeAutomaton::from_json(read_file(p));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("malformed automaton: ") + e.what());
  }
  throw ConfigError("an automaton is an inline object or a file path");
}

Payoff build_payoff(const json& function, const BuildContext& ctx) {
  if (function.is_object() && function.contains("automaton")) {
    return Payoff::from_automaton(load_automaton(function.at("automaton"), ctx));
  }
  if (function.is_object() && function.contains("instance")) {
    const auto name = get_or<std::string>(function, "instance", "");
    if (name == "eventually_zero") {
      return Payoff::from_function(eventually_zero_instance().f, name);
    }
    if (name == "indicator") {
      return Payoff::from_function(indicator_oscillation_instance().f, name);
    }
    throw ConfigError("unknown instance \"" + name + "\"");
  }
  throw ConfigError("function must give \"automaton\" or \"instance\"");
}

PlayerOnePtr build_player_one(const json& d, const BuildContext& ctx) {
  const std::string& kind = kind_of(d, "player_one");
  if (kind == "constant") {
    return std::make_unique<ConstantOne>(get_or<Letter>(d, "letter", 0));
  }
  if (kind == "branch") {
    try {
      return std::make_unique<BranchOne>(EventuallyPeriodicBranch::parse(
          field(d, "branch", "branch").get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (kind == "random_fsm") {
    Rng rng(stream_seed(d, ctx, "player_one"));
    const std::vector<Dyadic> values =
        d.contains("values") ? dyadic_list(d.at("values"))
                             : std::vector<Dyadic>{0, 1};
    return std::make_unique<FsmOne>(
        random_fsm_one(rng, get_or<std::size_t>(d, "states", 3), values,
                       get_or<std::size_t>(d, "letters", 2)));
  }
  if (kind == "copycat") return copycat_strategy();
  if (kind == "approx_copycat") {
    return approx_copycat(std::make_shared<const DyadicSpiral>(
        get_or<std::size_t>(d, "max_stage", 8)));
  }
  if (kind == "meager_dense") {
    const auto name = get_or<std::string>(d, "instance", "eventually_zero");
    if (name != "eventually_zero") {
      throw ConfigError("unknown meager_dense instance \"" + name + "\"");
    }
    return strategy_i_meager_dense(
        std::make_shared<const MeagerDenseInstance>(eventually_zero_instance()));
  }
  if (kind == "oscillation") {
    const auto name = get_or<std::string>(d, "instance", "indicator");
    if (name != "indicator") {
      throw ConfigError("unknown oscillation instance \"" + name + "\"");
    }
    return strategy_i_oscillation(std::make_shared<const OscillationInstance>(
        indicator_oscillation_instance()));
  }
  if (kind == "lift") {
    const PlayerOnePtr inner = build_player_one(field(d, "inner", "lift"), ctx);
    return lift_strategy(*inner,
                         ValueSet::finite(dyadic_list(field(d, "values", "lift"))));
  }
  if (kind == "relabel") {
    const PlayerOnePtr inner = build_player_one(field(d, "inner", "relabel"), ctx);
    std::vector<std::pair<Dyadic, Dyadic>> mapping;
    for (const json& p : field(d, "mapping", "relabel")) {
      if (!p.is_array() || p.size() != 2) {
        throw ConfigError("relabel: mapping entries are [d, i(d)]");
      }
      mapping.emplace_back(dyadic_from_json(p[0]), dyadic_from_json(p[1]));
    }
    try {
      return relabel_strategy(*inner, std::move(mapping));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("unknown player_one kind \"" + kind + "\"");
}

PlayerTwoPtr build_player_two(const json& d, const BuildContext& ctx) {
  const std::string& kind = kind_of(d, "player_two");
  if (kind == "from_u") {
    if (d.contains("automaton")) {
      return strategy_ii_from_u(load_automaton(d.at("automaton"), ctx));
    }
    if (!ctx.payoff_automaton) {
      throw ConfigError("from_u: no automaton and the payoff is not one");
    }
    return strategy_ii_from_u(*ctx.payoff_automaton);
  }
  if (kind == "constant") {
    PlayerTwoMove m{dyadic_from_json(field(d, "v", "constant")), std::nullopt};
    if (d.contains("w")) m.w = dyadic_from_json(d.at("w"));
    return std::make_unique<ConstantTwo>(m);
  }
  if (kind == "cyclic") {
    std::vector<PlayerTwoMove> moves;
    for (const json& m : field(d, "moves", "cyclic")) {
      moves.push_back(move_from_json(m));
    }
    if (moves.empty()) throw ConfigError("cyclic: no moves");
    return std::make_unique<CyclicTwo>(std::move(moves));
  }
  if (kind == "pair") {
    const PlayerTwoPtr f = build_player_two(field(d, "f", "pair"), ctx);
    const PlayerTwoPtr g = build_player_two(field(d, "g", "pair"), ctx);
    return pair_strategies(*f, *g);
  }
  if (kind == "random_fsm") {
    Rng rng(stream_seed(d, ctx, "player_two"));
    const std::vector<Dyadic> values =
        d.contains("values") ? dyadic_list(d.at("values"))
                             : std::vector<Dyadic>{0, 1};
    if (values.empty()) throw ConfigError("random_fsm: empty values");
    return std::make_unique<FsmTwo>(random_fsm_two(
        rng, get_or<std::size_t>(d, "states", 3), values,
        get_or<bool>(d, "pairs", false), get_or<std::size_t>(d, "letters", 2)));
  }
  throw ConfigError("unknown player_two kind \"" + kind + "\"");
}

Pipeline build_pipeline(const json& construct, const BuildContext& ctx) {
  if (!construct.is_object()) throw ConfigError("construct block is missing");
  const json& source = field(construct, "source", "construct");
  const json& stages_json = field(construct, "stages", "construct");
  std::vector<std::string> stages;
  try {
    stages = stages_json.get<std::vector<std::string>>();
  } catch (const json::exception&) {
    throw ConfigError("construct: stages must be a list of names");
  }
  if (stages.empty()) throw ConfigError("construct: empty pipeline");
  if (stages.back() != "construct_u") {
    throw ConfigError("construct: the pipeline must end with construct_u");
  }
  bool regularize = false;
  bool discretize_stage = false;
  for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
    if (stages[i] == "regularize" && i == 0) {
      regularize = true;
    } else if (stages[i] == "discretize" && !discretize_stage) {
      discretize_stage = true;
    } else {
      throw ConfigError("construct: unexpected stage \"" + stages[i] + "\"");
    }
  }

  Pipeline p;
  p.minimize = get_or<bool>(construct, "minimize", true);
  if (construct.contains("branches")) {
    const json& b = construct.at("branches");
    p.max_stem = get_or<std::size_t>(b, "max_stem", p.max_stem);
    p.max_cycle = get_or<std::size_t>(b, "max_cycle", p.max_cycle);
  }

  if (source.contains("levels")) {
    if (!regularize) throw ConfigError("construct: levels need a regularize stage");
    std::vector<LscLevel> levels;
    for (const json& l : source.at("levels")) {
      levels.push_back({load_automaton(field(l, "automaton", "level"), ctx),
                        get_or<std::size_t>(l, "depth", 0)});
    }
    if (levels.empty()) throw ConfigError("construct: no levels");
    p.arity = levels.front().automaton.num_letters();
    auto reg = std::make_shared<const RegularizedFamily>(std::move(levels));
    const std::size_t last = reg->stable_level({});
    p.target = [reg, last](const EventuallyPeriodicBranch& x) {
      return reg->level_value(last, x);
    };
    p.family = reg;
  } else if (source.contains("algebra")) {
    if (regularize) throw ConfigError("construct: regularize needs levels");
    const json& a = source.at("algebra");
    const AlgebraOp op = parse_op(get_or<std::string>(a, "op", ""));
    const NodeAutomaton u1 = load_automaton(field(a, "left", "algebra"), ctx);
    const NodeAutomaton u2 = load_automaton(field(a, "right", "algebra"), ctx);
    p.arity = u1.num_letters();
    p.family = std::make_shared<const AlgebraFamily>(u1, u2, op);
    p.target = [u1, u2, op](const EventuallyPeriodicBranch& x) {
      return apply(op, eval_limsup(u1, x), eval_limsup(u2, x));
    };
  } else if (source.contains("automaton")) {
    const NodeAutomaton u = load_automaton(source.at("automaton"), ctx);
    p.arity = u.num_letters();
    p.family = regularize ? regularize_nonincreasing({{u, 0}})
                          : family_from_automaton(u);
    p.target = [u](const EventuallyPeriodicBranch& x) {
      return eval_limsup(u, x);
    };
  } else {
    throw ConfigError("construct: source must give automaton, levels or algebra");
  }
  if (discretize_stage) p.family = discretize(p.family);
  return p;
}

}  // namespace limsup
