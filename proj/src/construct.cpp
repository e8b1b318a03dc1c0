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

#include "limsup/construct.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace limsup {
namespace {

Dyadic finite_or_throw(const ExtValue& v, std::span<const Letter> s) {
  if (!v.is_finite()) {
    throw StabilizationError("construct_u: unbounded supremum at prefix [" +
                                 prefix_to_string(s) + "]",
                             Prefix(s.begin(), s.end()));
  }
  return v.value();
}

}  // namespace

ExtValue rstar_sup(const GridLscFamily& family, std::span<const Letter> s) {
  return family.inf_all(s);
}

std::optional<ExtValue> rn_sup(const GridLscFamily& family, std::size_t n,
                               std::span<const Letter> s) {
  const ExtValue here = family.node_inf(n, s);
  if (s.empty()) {
    if (here.is_minus_infinity()) return std::nullopt;
    return here;
  }
  const ExtValue above = family.node_inf(n, s.first(s.size() - 1));
  if (above < here) return here;
  return std::nullopt;
}

ConstructedValue construct_u(const GridLscFamily& family,
                             std::span<const Letter> s) {
  std::size_t top = family.stable_level(s);
  std::vector<ExtValue> above;
  if (!s.empty()) {
    const auto p = s.first(s.size() - 1);
    top = std::max(top, family.stable_level(p));
    above = family.levels(p, top);
  }
  const std::vector<ExtValue> here = family.levels(s, top);

  ExtValue best = here[top];  // inf over n, reached at the stable level
  bool any = !best.is_minus_infinity();
  for (std::size_t n = 0; n <= top; ++n) {
    const bool nonempty = s.empty() ? !here[n].is_minus_infinity()
                                    : above[n] < here[n];
    if (nonempty) {
      best = any ? max(best, here[n]) : here[n];
      any = true;
    }
  }
  ConstructedValue out;
  out.stabilization_level = top;
  if (!any) {
    out.value = Dyadic::integer(-static_cast<std::int64_t>(s.size()));
    out.r_empty = true;
  } else {
    out.value = finite_or_throw(best, s);
  }
  return out;
}

ConstructedFunction::ConstructedFunction(FamilyPtr family)
    : family_(std::move(family)) {
  if (!family_) throw std::invalid_argument("ConstructedFunction: null family");
}

const ConstructedValue& ConstructedFunction::evaluate(
    std::span<const Letter> s) const {
  Prefix key(s.begin(), s.end());
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  ConstructedValue value = construct_u(*family_, s);
  std::unique_lock lock(mutex_);
  return cache_.try_emplace(std::move(key), value).first->second;
}

std::size_t ConstructedFunction::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

std::optional<Dyadic> constructed_limsup(const ConstructedFunction& u,
                                         const EventuallyPeriodicBranch& x,
                                         std::size_t* horizon,
                                         std::size_t* period) {
  const std::size_t cycle = x.cycle().size();
  const std::size_t states = u.family().state_count();
  const std::size_t h = x.stem().size() + 5 * states * cycle + 4;
  if (horizon) *horizon = h;

  std::vector<Dyadic> values;
  values.reserve(h + 1);
  const Prefix full = x.take(h + 1);
  for (std::size_t t = 0; t <= h; ++t) {
    values.push_back(u(std::span<const Letter>(full).first(t + 1)));
  }
  for (std::size_t p = cycle; 3 * p <= values.size(); p += cycle) {
    const std::size_t from = values.size() - 3 * p;
    bool periodic = true;
    for (std::size_t i = from + p; i < values.size() && periodic; ++i) {
      periodic = values[i] == values[i - p];
    }
    if (periodic) {
      if (period) *period = p;
      return *std::max_element(values.end() - static_cast<std::ptrdiff_t>(p),
                               values.end());
    }
  }
  if (period) *period = 0;
  return std::nullopt;
}

ConstructionReport verify_construction(
    const ConstructedFunction& u,
    std::span<const EventuallyPeriodicBranch> branches,
    const BranchFunction& target) {
  ConstructionReport report;
  for (const EventuallyPeriodicBranch& x : branches) {
    BranchCheck check{x, target(x), std::nullopt, 0, 0};
    check.constructed = constructed_limsup(u, x, &check.horizon, &check.period);
    for (std::size_t t = 0; t <= check.horizon; ++t) {
      report.max_stabilization_level =
          std::max(report.max_stabilization_level,
                   u.evaluate(x.prefix(t)).stabilization_level);
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

std::size_t ConstructionReport::equal_count() const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [](const auto& c) { return c.equal(); }));
}

std::size_t ConstructionReport::inconclusive_count() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(),
                    [](const auto& c) { return c.inconclusive(); }));
}

std::size_t ConstructionReport::mismatch_count() const {
  return checks.size() - equal_count() - inconclusive_count();
}

std::string ConstructionReport::summary() const {
  std::ostringstream out;
  if (all_equal()) {
    out << "equal on all " << checks.size() << " corpus branches";
  } else {
    out << equal_count() << " equal, " << mismatch_count() << " mismatched, "
        << inconclusive_count() << " inconclusive of " << checks.size()
        << " corpus branches";
  }
  out << " (max stabilization level " << max_stabilization_level << ")";
  return out.str();
}

FamilyPtr algebra_family(const NodeAutomaton& u1, const NodeAutomaton& u2,
                         AlgebraOp op) {
  return discretize(std::make_shared<AlgebraFamily>(u1, u2, op));
}

ConstructedFunction algebra(const NodeAutomaton& u1, const NodeAutomaton& u2,
                            AlgebraOp op) {
  return ConstructedFunction(algebra_family(u1, u2, op));
}

ConstructedFunction construct_from_automaton(const NodeAutomaton& u) {
  return ConstructedFunction(discretize(family_from_automaton(u)));
}

namespace {

// u-values on s + w for every nonempty w of length <= depth, in a fixed
// (length, lexicographic) order.
std::vector<Dyadic> signature(const ConstructedFunction& u, const Prefix& s,
                              std::size_t arity, std::size_t depth) {
  std::vector<Dyadic> out;
  std::vector<Prefix> layer{s};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Prefix> next;
    next.reserve(layer.size() * arity);
    for (const Prefix& p : layer) {
      for (Letter a = 0; a < arity; ++a) {
        Prefix c = extend(p, a);
        out.push_back(u(c));
        next.push_back(std::move(c));
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::optional<NodeAutomaton> merge_by_signature(
    const ConstructedFunction& u, std::size_t arity, std::size_t depth,
    std::size_t max_states) {
  std::map<std::vector<Dyadic>, std::size_t> ids;
  std::vector<Prefix> reps;
  const auto intern = [&](const Prefix& s) -> std::optional<std::size_t> {
    auto sig = signature(u, s, arity, depth);
    auto [it, fresh] = ids.try_emplace(std::move(sig), reps.size());
    if (fresh) {
      if (reps.size() == max_states) return std::nullopt;
      reps.push_back(s);
    }
    return it->second;
  };
  if (!intern(Prefix{})) return std::nullopt;
  std::vector<NodeAutomaton::Transition> table;
  for (std::size_t q = 0; q < reps.size(); ++q) {
    for (Letter a = 0; a < arity; ++a) {
      const Prefix child = extend(reps[q], a);
      const auto id = intern(child);
      if (!id) return std::nullopt;
      table.push_back({*id, u(child)});
    }
  }
  return NodeAutomaton(reps.size(), arity, false, 0, std::move(table));
}

bool agrees_to_depth(const NodeAutomaton& m, const ConstructedFunction& u,
                     std::size_t arity, std::size_t depth) {
  std::vector<std::pair<Prefix, std::size_t>> layer{{Prefix{}, m.initial()}};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<std::pair<Prefix, std::size_t>> next;
    for (const auto& [p, q] : layer) {
      for (Letter a = 0; a < arity; ++a) {
        const auto& tr = m.transition(q, a);
        Prefix c = extend(p, a);
        if (tr.output != u(c)) return false;
        next.emplace_back(std::move(c), tr.next);
      }
    }
    layer = std::move(next);
  }
  return true;
}

}  // namespace

std::optional<MinimizationResult> minimize_to_automaton(
    const ConstructedFunction& u, std::size_t arity,
    const MinimizationOptions& options) {
  if (arity == 0) throw std::invalid_argument("minimize: arity must be > 0");
  for (std::size_t depth = 2; depth <= options.signature_depth_max; ++depth) {
    auto candidate = merge_by_signature(u, arity, depth, options.max_states);
    if (!candidate) continue;
    if (agrees_to_depth(*candidate, u, arity, options.validate_depth)) {
      return MinimizationResult{std::move(*candidate), depth,
                                options.validate_depth};
    }
  }
  return std::nullopt;
}

}  // namespace limsup
