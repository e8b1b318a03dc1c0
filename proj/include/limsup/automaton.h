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

#ifndef LIMSUP_AUTOMATON_H_
#define LIMSUP_AUTOMATON_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "limsup/dyadic.h"
#include "limsup/tree.h"

namespace limsup {

// A deterministic machine that labels tree nodes with dyadic values. Letters
// 0..letters-1 have their own class; when has_default() every other letter
// falls into one shared default class. Outputs sit on transitions, so
// u(x_0..x_t) is the output of the transition that reads x_t.
class NodeAutomaton {
 public:
  struct Transition {
    std::size_t next = 0;
    Dyadic output;
    friend bool operator==(const Transition&, const Transition&) = default;
  };

  // `table` is state-major with num_classes() entries per state; the default
  // class, when present, is the last column.
  NodeAutomaton(std::size_t states, std::size_t letters, bool has_default,
                std::size_t initial, std::vector<Transition> table);

  // One state, output c on every letter of {0..letters-1}.
  static NodeAutomaton constant(const Dyadic& c, std::size_t letters = 2);
  // One state, output equal to the letter read, over {0..letters-1}.
  static NodeAutomaton letter_value(std::size_t letters = 2);

  std::size_t num_states() const { return states_; }
  std::size_t num_letters() const { return letters_; }
  bool has_default() const { return has_default_; }
  std::size_t num_classes() const { return letters_ + (has_default_ ? 1 : 0); }
  std::size_t initial() const { return initial_; }

  // Class index for a letter; nullopt when the letter is not accepted.
  std::optional<std::size_t> class_of(Letter a) const;
  std::size_t class_of_or_throw(Letter a) const;

  const Transition& transition(std::size_t state, std::size_t cls) const {
    return table_[state * num_classes() + cls];
  }
  const Transition& step(std::size_t state, Letter a) const {
    return transition(state, class_of_or_throw(a));
  }

  std::size_t state_after(std::span<const Letter> s) const;
  // u(s). The empty prefix reports min_output().
  Dyadic value(std::span<const Letter> s) const;
  // Output of every transition along s (u of each nonempty prefix).
  std::vector<Dyadic> outputs_along(std::span<const Letter> s) const;

  // Sorted distinct transition outputs.
  const std::vector<Dyadic>& distinct_outputs() const { return outputs_; }
  const Dyadic& min_output() const { return outputs_.front(); }
  // Finest grid exponent used by any output.
  std::uint32_t grid_exponent() const;

  // Full tree over the accepted letters.
  TreeSpec tree() const;

  // JSON: {"states", "initial", "letters", "transitions": [[state, class or
  // "default", next, "z/2^n"], ...]}.
  std::string to_json() const;
  static NodeAutomaton from_json(const std::string& text);

  friend bool operator==(const NodeAutomaton&, const NodeAutomaton&) = default;

 private:
  std::size_t states_;
  std::size_t letters_;
  bool has_default_;
  std::size_t initial_;
  std::vector<Transition> table_;
  std::vector<Dyadic> outputs_;
};

// Outputs of u along x split into the transient part and the repeating part
// found by (state, position in cycle) repetition.
struct LassoSummary {
  std::vector<Dyadic> transient_outputs;
  std::vector<Dyadic> cycle_outputs;
  // limsup of the full output stream.
  Dyadic limsup() const;
  Dyadic liminf() const;
};

LassoSummary lasso_summary(const NodeAutomaton& u,
                           const EventuallyPeriodicBranch& x);

// limsup_t u(x_0..x_t), exact.
Dyadic eval_limsup(const NodeAutomaton& u, const EventuallyPeriodicBranch& x);

// Minimum over infinite runs from q of the largest output seen, found by
// threshold search over the distinct outputs.
Dyadic minmax_value(const NodeAutomaton& u, std::size_t q);
std::vector<Dyadic> minmax_values(const NodeAutomaton& u);

// States of `u` from which an infinite run exists that only uses
// transitions with output <= threshold.
std::vector<bool> infinite_run_states(const NodeAutomaton& u,
                                      const Dyadic& threshold);

}  // namespace limsup

#endif  // LIMSUP_AUTOMATON_H_
