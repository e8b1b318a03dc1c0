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

#ifndef LIMSUP_JOINT_H_
#define LIMSUP_JOINT_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <span>
#include <vector>

#include "limsup/automaton.h"
#include "limsup/dyadic.h"

namespace limsup {

enum class JointObjective { kSum, kMax };

// Synchronous product of node automata reading the same letters. Joint
// letters are the letters every component accepts; letters at or above the
// largest explicit alphabet are represented by one default letter when all
// components have a default class.
class ProductSystem {
 public:
  explicit ProductSystem(std::vector<NodeAutomaton> components);

  std::size_t num_components() const { return components_.size(); }
  const NodeAutomaton& component(std::size_t i) const {
    return components_[i];
  }
  std::size_t num_states() const { return num_states_; }
  std::size_t initial() const { return initial_; }

  // Representative letters, one per joint letter class.
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t num_letters() const { return letters_.size(); }

  std::size_t next(std::size_t state, std::size_t joint_letter) const {
    return next_[state * letters_.size() + joint_letter];
  }
  const Dyadic& output(std::size_t state, std::size_t joint_letter,
                       std::size_t component) const {
    return outputs_[(state * letters_.size() + joint_letter) *
                        components_.size() +
                    component];
  }

  std::size_t encode(std::span<const std::size_t> states) const;
  std::vector<std::size_t> decode(std::size_t state) const;

  std::size_t state_after(std::span<const Letter> s) const;
  // outputs[i][t] is component i's output at depth t along s.
  std::vector<std::vector<Dyadic>> outputs_along(
      std::span<const Letter> s) const;

  // Candidate values of component i: its distinct outputs.
  const std::vector<Dyadic>& component_outputs(std::size_t i) const {
    return components_[i].distinct_outputs();
  }

  TreeSpec tree() const;

 private:
  std::size_t joint_class(Letter a) const;

  std::vector<NodeAutomaton> components_;
  std::size_t num_states_ = 1;
  std::size_t initial_ = 0;
  std::vector<Letter> letters_;
  std::vector<std::size_t> next_;
  std::vector<Dyadic> outputs_;
  bool all_default_ = false;
  std::size_t max_letters_ = 0;
};

// States with an infinite run whose every transition at depth >= 0 keeps
// component i's output <= bound[i].
std::vector<bool> joint_infinite_run_states(const ProductSystem& product,
                                            std::span<const Dyadic> bound);

// Minimum, over infinite runs starting in `start` at depth `start_depth`, of
// objective_i(max(fixed_i, sup of component i's outputs at depths >=
// max(start_depth, active_from_i))). Exact: candidate value vectors are
// enumerated and tested for feasibility; for kMax a single threshold suffices.
ExtValue joint_cylinder_value(const ProductSystem& product,
                              JointObjective objective, std::size_t start,
                              std::size_t start_depth,
                              std::span<const std::size_t> active_from,
                              std::span<const ExtValue> fixed);

// Two-machine kernel: min over joint runs from (q1, q2) of
// objective(max(fixed1, max outputs of u1), max(fixed2, max outputs of u2)).
ExtValue joint_minmax(const NodeAutomaton& u1, const NodeAutomaton& u2,
                      JointObjective objective, std::size_t q1,
                      std::size_t q2, const ExtValue& fixed1,
                      const ExtValue& fixed2);

// Minimal feasible tail-value vectors from every product state (all
// components active). value_with_fixed() then folds in the fixed parts.
class ParetoTails {
 public:
  explicit ParetoTails(const ProductSystem& product);

  const std::vector<std::vector<Dyadic>>& frontier(std::size_t state) const {
    return frontier_[state];
  }
  ExtValue value_with_fixed(std::size_t state, JointObjective objective,
                            std::span<const ExtValue> fixed) const;

 private:
  std::vector<std::vector<std::vector<Dyadic>>> frontier_;
};

// A monotone finite-ranged sequence failed to stabilize within its cap.
class StabilizationError : public std::runtime_error {
 public:
  StabilizationError(const std::string& what, Prefix offending = {})
      : std::runtime_error(what), offending_(std::move(offending)) {}
  const Prefix& offending_prefix() const { return offending_; }

 private:
  Prefix offending_;
};

// Sets of states reachable in exactly k steps from `start`, for k = 0, 1, ...
// up to (and excluding) the first repetition. `repeat_from` is the index the
// sequence cycles back to. Throws StabilizationError past `cap` steps.
struct ReachableSequence {
  std::vector<std::vector<std::size_t>> sets;
  std::size_t repeat_from = 0;
};

ReachableSequence reachable_sequence(
    std::size_t start, std::size_t num_states,
    const std::function<void(std::size_t, std::vector<std::size_t>&)>&
        successors,
    std::size_t cap);

}  // namespace limsup

#endif  // LIMSUP_JOINT_H_
