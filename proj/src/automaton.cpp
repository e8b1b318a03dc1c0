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

#include "limsup/automaton.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace limsup {

using json = nlohmann::json;

NodeAutomaton::NodeAutomaton(std::size_t states, std::size_t letters,
                             bool has_default, std::size_t initial,
                             std::vector<Transition> table)
    : states_(states),
      letters_(letters),
      has_default_(has_default),
      initial_(initial),
      table_(std::move(table)) {
  if (states_ == 0) throw std::invalid_argument("automaton needs a state");
  if (num_classes() == 0) {
    throw std::invalid_argument("automaton needs at least one letter class");
  }
  if (initial_ >= states_) throw std::invalid_argument("bad initial state");
  if (table_.size() != states_ * num_classes()) {
    throw std::invalid_argument("transition table has wrong size");
  }
  for (const Transition& tr : table_) {
    if (tr.next >= states_) {
      throw std::invalid_argument("transition to a nonexistent state");
    }
    outputs_.push_back(tr.output);
  }
  std::sort(outputs_.begin(), outputs_.end());
  outputs_.erase(std::unique(outputs_.begin(), outputs_.end()),
                 outputs_.end());
}

NodeAutomaton NodeAutomaton::constant(const Dyadic& c, std::size_t letters) {
  std::vector<Transition> table(letters, Transition{0, c});
  return NodeAutomaton(1, letters, false, 0, std::move(table));
}

NodeAutomaton NodeAutomaton::letter_value(std::size_t letters) {
  std::vector<Transition> table;
  for (std::size_t a = 0; a < letters; ++a) {
    table.push_back({0, Dyadic::integer(static_cast<std::int64_t>(a))});
  }
  return NodeAutomaton(1, letters, false, 0, std::move(table));
}

std::optional<std::size_t> NodeAutomaton::class_of(Letter a) const {
  if (a < letters_) return static_cast<std::size_t>(a);
  if (has_default_) return letters_;
  return std::nullopt;
}

std::size_t NodeAutomaton::class_of_or_throw(Letter a) const {
  auto cls = class_of(a);
  if (!cls) {
    throw std::invalid_argument("letter " + std::to_string(a) +
                                " is outside the automaton's alphabet");
  }
  return *cls;
}

std::size_t NodeAutomaton::state_after(std::span<const Letter> s) const {
  std::size_t q = initial_;
  for (Letter a : s) q = step(q, a).next;
  return q;
}

Dyadic NodeAutomaton::value(std::span<const Letter> s) const {
  if (s.empty()) return min_output();
  const std::size_t q = state_after(s.first(s.size() - 1));
  return step(q, s.back()).output;
}

std::vector<Dyadic> NodeAutomaton::outputs_along(
    std::span<const Letter> s) const {
  std::vector<Dyadic> out;
  out.reserve(s.size());
  std::size_t q = initial_;
  for (Letter a : s) {
    const Transition& tr = step(q, a);
    out.push_back(tr.output);
    q = tr.next;
  }
  return out;
}

std::uint32_t NodeAutomaton::grid_exponent() const {
  std::uint32_t e = 0;
  for (const Dyadic& d : outputs_) e = std::max(e, d.exponent());
  return e;
}

TreeSpec NodeAutomaton::tree() const {
  return has_default_ ? TreeSpec::full_naturals() : TreeSpec::full(letters_);
}

std::string NodeAutomaton::to_json() const {
  json transitions = json::array();
  for (std::size_t q = 0; q < states_; ++q) {
    for (std::size_t c = 0; c < num_classes(); ++c) {
      const Transition& tr = transition(q, c);
      json cls = (has_default_ && c == letters_) ? json("default") : json(c);
      transitions.push_back(
          json::array({q, cls, tr.next, tr.output.to_string()}));
    }
  }
  json doc = {{"states", states_},
              {"initial", initial_},
              {"letters", letters_},
              {"transitions", transitions}};
  return doc.dump();
}

NodeAutomaton NodeAutomaton::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("automaton JSON: ") + e.what());
  }
  try {
    const auto states = doc.at("states").get<std::size_t>();
    const auto initial = doc.value("initial", std::size_t{0});
    const auto letters = doc.at("letters").get<std::size_t>();
    std::map<std::pair<std::size_t, std::size_t>, Transition> entries;
    bool has_default = false;
    for (const json& row : doc.at("transitions")) {
      if (!row.is_array() || row.size() != 4) {
        throw std::invalid_argument(
            "automaton JSON: transition rows are [state, class, next, value]");
      }
      const auto q = row[0].get<std::size_t>();
      std::size_t cls = 0;
      if (row[1].is_string()) {
        if (row[1].get<std::string>() != "default") {
          throw std::invalid_argument(
              "automaton JSON: letter class must be an integer or "
              "\"default\"");
        }
        has_default = true;
        cls = letters;
      } else {
        cls = row[1].get<std::size_t>();
        if (cls >= letters) {
          throw std::invalid_argument(
              "automaton JSON: letter class out of range");
        }
      }
      const auto next = row[2].get<std::size_t>();
      const Dyadic out = Dyadic::parse(row[3].get<std::string>());
      if (!entries.emplace(std::pair{q, cls}, Transition{next, out}).second) {
        throw std::invalid_argument("automaton JSON: duplicate transition");
      }
    }
    const std::size_t classes = letters + (has_default ? 1 : 0);
    std::vector<Transition> table;
    table.reserve(states * classes);
    for (std::size_t q = 0; q < states; ++q) {
      for (std::size_t c = 0; c < classes; ++c) {
        auto it = entries.find({q, c});
        if (it == entries.end()) {
          throw std::invalid_argument(
              "automaton JSON: missing transition for state " +
              std::to_string(q) + " class " + std::to_string(c));
        }
        table.push_back(it->second);
      }
    }
    return NodeAutomaton(states, letters, has_default, initial,
                         std::move(table));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("automaton JSON: ") + e.what());
  }
}

Dyadic LassoSummary::limsup() const {
  return *std::max_element(cycle_outputs.begin(), cycle_outputs.end());
}

Dyadic LassoSummary::liminf() const {
  return *std::min_element(cycle_outputs.begin(), cycle_outputs.end());
}

LassoSummary lasso_summary(const NodeAutomaton& u,
                           const EventuallyPeriodicBranch& x) {
  const std::size_t stem = x.stem().size();
  const std::size_t period = x.cycle().size();
  // first_seen[state * period + phase] = time index
  std::vector<std::size_t> first_seen(u.num_states() * period,
                                      static_cast<std::size_t>(-1));
  std::vector<Dyadic> outputs;
  std::size_t q = u.initial();
  for (std::size_t t = 0;; ++t) {
    if (t >= stem) {
      std::size_t& seen = first_seen[q * period + (t - stem) % period];
      if (seen != static_cast<std::size_t>(-1)) {
        LassoSummary out;
        out.transient_outputs.assign(outputs.begin(), outputs.begin() + seen);
        out.cycle_outputs.assign(outputs.begin() + seen, outputs.end());
        return out;
      }
      seen = t;
    }
    const auto& tr = u.step(q, x.letter_at(t));
    outputs.push_back(tr.output);
    q = tr.next;
  }
}

Dyadic eval_limsup(const NodeAutomaton& u, const EventuallyPeriodicBranch& x) {
  return lasso_summary(u, x).limsup();
}

std::vector<bool> infinite_run_states(const NodeAutomaton& u,
                                      const Dyadic& threshold) {
  // Greatest fixpoint: drop states without an allowed successor inside.
  std::vector<bool> alive(u.num_states(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t q = 0; q < u.num_states(); ++q) {
      if (!alive[q]) continue;
      bool has_successor = false;
      for (std::size_t c = 0; c < u.num_classes() && !has_successor; ++c) {
        const auto& tr = u.transition(q, c);
        has_successor = tr.output <= threshold && alive[tr.next];
      }
      if (!has_successor) {
        alive[q] = false;
        changed = true;
      }
    }
  }
  return alive;
}

Dyadic minmax_value(const NodeAutomaton& u, std::size_t q) {
  if (q >= u.num_states()) throw std::out_of_range("minmax_value: bad state");
  for (const Dyadic& theta : u.distinct_outputs()) {
    if (infinite_run_states(u, theta)[q]) return theta;
  }
  // The largest output admits every transition and the machine is total.
  return u.distinct_outputs().back();
}

std::vector<Dyadic> minmax_values(const NodeAutomaton& u) {
  std::vector<Dyadic> out(u.num_states());
  std::vector<bool> done(u.num_states(), false);
  for (const Dyadic& theta : u.distinct_outputs()) {
    const std::vector<bool> alive = infinite_run_states(u, theta);
    for (std::size_t q = 0; q < u.num_states(); ++q) {
      if (!done[q] && alive[q]) {
        out[q] = theta;
        done[q] = true;
      }
    }
  }
  return out;
}

}  // namespace limsup
