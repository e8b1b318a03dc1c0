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

#ifndef LIMSUP_CONSTRUCT_H_
#define LIMSUP_CONSTRUCT_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "limsup/automaton.h"
#include "limsup/family.h"

namespace limsup {

// Building a node function u from a non-increasing grid-valued family:
//
//   R_*(s) = { r : every branch through s has g_n > r for all n }
//   R_n(s) = { r : every branch through s has g_n > r, and no proper
//                  initial segment of s has that property }
//   u(s)   = sup (R_*(s) u R_0(s) u R_1(s) u ...), or -|s| when empty.
//
// With attained cylinder infima h_n(s) these reduce to
//   R_*(s) = (-inf, inf_n h_n(s))
//   R_n(s) = [h_n(parent(s)), h_n(s))   (root: (-inf, h_n([])))
// because h_n is monotone along prefixes, so the parent is the binding
// proper initial segment.

// sup R_*(s); -inf when R_*(s) is empty.
ExtValue rstar_sup(const GridLscFamily& family, std::span<const Letter> s);

// sup R_n(s), or nullopt when R_n(s) is empty.
std::optional<ExtValue> rn_sup(const GridLscFamily& family, std::size_t n,
                               std::span<const Letter> s);

struct ConstructedValue {
  Dyadic value;
  // R(s) was empty and value = -|s|.
  bool r_empty = false;
  // Last level scanned; every level past it repeats an earlier answer.
  std::size_t stabilization_level = 0;
  friend bool operator==(const ConstructedValue&,
                         const ConstructedValue&) = default;
};

// Uncached evaluation of u(s).
ConstructedValue construct_u(const GridLscFamily& family,
                             std::span<const Letter> s);

// u over a family, with a per-prefix cache that is safe for concurrent
// readers and writers.
class ConstructedFunction {
 public:
  explicit ConstructedFunction(FamilyPtr family);

  const ConstructedValue& evaluate(std::span<const Letter> s) const;
  Dyadic operator()(std::span<const Letter> s) const {
    return evaluate(s).value;
  }

  const GridLscFamily& family() const { return *family_; }
  const FamilyPtr& family_ptr() const { return family_; }
  std::size_t cache_size() const;

 private:
  FamilyPtr family_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Prefix, ConstructedValue, PrefixHash> cache_;
};

using BranchFunction = std::function<Dyadic(const EventuallyPeriodicBranch&)>;

struct BranchCheck {
  EventuallyPeriodicBranch branch;
  Dyadic target;
  // limsup of u along the branch, when a repeating segment was detected.
  std::optional<Dyadic> constructed;
  std::size_t horizon = 0;
  std::size_t period = 0;
  bool equal() const { return constructed && *constructed == target; }
  bool inconclusive() const { return !constructed; }
};

struct ConstructionReport {
  std::vector<BranchCheck> checks;
  std::size_t max_stabilization_level = 0;

  std::size_t equal_count() const;
  std::size_t mismatch_count() const;
  std::size_t inconclusive_count() const;
  bool all_equal() const { return equal_count() == checks.size(); }
  std::string summary() const;
};

// Compares limsup_t u(x_0..x_t) with target(x) on every branch. u's values
// along x are simulated until the tail is seen to repeat for three periods;
// branches without a detected repeat are reported inconclusive.
ConstructionReport verify_construction(
    const ConstructedFunction& u,
    std::span<const EventuallyPeriodicBranch> branches,
    const BranchFunction& target);

// limsup of u along x from the detected repeating segment, or nullopt.
std::optional<Dyadic> constructed_limsup(const ConstructedFunction& u,
                                         const EventuallyPeriodicBranch& x,
                                         std::size_t* horizon = nullptr,
                                         std::size_t* period = nullptr);

// Family for u1 (op) u2, discretized; u over it realizes
// limsup u = f1 (op) f2.
FamilyPtr algebra_family(const NodeAutomaton& u1, const NodeAutomaton& u2,
                         AlgebraOp op);
ConstructedFunction algebra(const NodeAutomaton& u1, const NodeAutomaton& u2,
                            AlgebraOp op);

// family_from_automaton -> discretize -> u.
ConstructedFunction construct_from_automaton(const NodeAutomaton& u);

struct MinimizationOptions {
  std::size_t signature_depth_max = 6;
  std::size_t validate_depth = 10;
  std::size_t max_states = 512;
};

struct MinimizationResult {
  NodeAutomaton automaton;
  std::size_t signature_depth;
  std::size_t validated_depth;
};

// Tries to realize u as a NodeAutomaton over {0..arity-1} by merging
// prefixes whose u-values agree on all extensions up to a signature depth,
// then checking the candidate against u on every prefix up to
// validate_depth. nullopt when no depth yields a validated machine.
std::optional<MinimizationResult> minimize_to_automaton(
    const ConstructedFunction& u, std::size_t arity,
    const MinimizationOptions& options = {});

}  // namespace limsup

#endif  // LIMSUP_CONSTRUCT_H_
