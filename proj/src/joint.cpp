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

#include "limsup/joint.h"

#include <algorithm>
#include <limits>
#include <map>

namespace limsup {
namespace {

constexpr std::size_t kMaxProductStates = std::size_t{1} << 20;

ExtValue combine(JointObjective objective, std::span<const ExtValue> values) {
  ExtValue acc = values.front();
  for (std::size_t i = 1; i < values.size(); ++i) {
    acc = objective == JointObjective::kSum ? acc + values[i]
                                            : max(acc, values[i]);
  }
  return acc;
}

}  // namespace

ProductSystem::ProductSystem(std::vector<NodeAutomaton> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("product of zero automata");
  }
  all_default_ = true;
  std::size_t explicit_bound = std::numeric_limits<std::size_t>::max();
  for (const NodeAutomaton& u : components_) {
    if (num_states_ > kMaxProductStates / u.num_states()) {
      throw std::length_error("product state space too large");
    }
    num_states_ *= u.num_states();
    max_letters_ = std::max(max_letters_, u.num_letters());
    if (u.has_default()) continue;
    all_default_ = false;
    explicit_bound = std::min(explicit_bound, u.num_letters());
  }
  const std::size_t shared =
      all_default_ ? max_letters_ : std::min(explicit_bound, max_letters_);
  for (std::size_t a = 0; a < shared; ++a) letters_.push_back(a);
  if (all_default_) letters_.push_back(max_letters_);
  if (letters_.empty()) {
    throw std::invalid_argument("automata share no letters");
  }

  std::vector<std::size_t> init;
  for (const NodeAutomaton& u : components_) init.push_back(u.initial());
  initial_ = encode(init);

  const std::size_t k = components_.size();
  next_.resize(num_states_ * letters_.size());
  outputs_.resize(num_states_ * letters_.size() * k);
  for (std::size_t p = 0; p < num_states_; ++p) {
    const std::vector<std::size_t> qs = decode(p);
    for (std::size_t j = 0; j < letters_.size(); ++j) {
      std::vector<std::size_t> nq(k);
      for (std::size_t i = 0; i < k; ++i) {
        const auto& tr = components_[i].step(qs[i], letters_[j]);
        nq[i] = tr.next;
        outputs_[(p * letters_.size() + j) * k + i] = tr.output;
      }
      next_[p * letters_.size() + j] = encode(nq);
    }
  }
}

std::size_t ProductSystem::encode(std::span<const std::size_t> states) const {
  std::size_t code = 0;
  for (std::size_t i = components_.size(); i-- > 0;) {
    code = code * components_[i].num_states() + states[i];
  }
  return code;
}

std::vector<std::size_t> ProductSystem::decode(std::size_t state) const {
  std::vector<std::size_t> out(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    out[i] = state % components_[i].num_states();
    state /= components_[i].num_states();
  }
  return out;
}

std::size_t ProductSystem::joint_class(Letter a) const {
  if (a < max_letters_) {
    if (a < letters_.size() && letters_[a] == a) return a;
  } else if (all_default_) {
    return letters_.size() - 1;
  }
  throw std::invalid_argument("letter " + std::to_string(a) +
                              " is not accepted by every component");
}

std::size_t ProductSystem::state_after(std::span<const Letter> s) const {
  std::size_t p = initial_;
  for (Letter a : s) p = next(p, joint_class(a));
  return p;
}

std::vector<std::vector<Dyadic>> ProductSystem::outputs_along(
    std::span<const Letter> s) const {
  std::vector<std::vector<Dyadic>> out(components_.size());
  std::size_t p = initial_;
  for (Letter a : s) {
    const std::size_t j = joint_class(a);
    for (std::size_t i = 0; i < components_.size(); ++i) {
      out[i].push_back(output(p, j, i));
    }
    p = next(p, j);
  }
  return out;
}

TreeSpec ProductSystem::tree() const {
  if (all_default_) return TreeSpec::full_naturals();
  return TreeSpec::full(letters_.size());
}

std::vector<bool> joint_infinite_run_states(const ProductSystem& product,
                                            std::span<const Dyadic> bound) {
  const std::size_t n = product.num_states();
  const std::size_t k = product.num_components();
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p < n; ++p) {
      if (!alive[p]) continue;
      bool ok = false;
      for (std::size_t j = 0; j < product.num_letters() && !ok; ++j) {
        if (!alive[product.next(p, j)]) continue;
        ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
          ok = product.output(p, j, i) <= bound[i];
        }
      }
      if (!ok) {
        alive[p] = false;
        changed = true;
      }
    }
  }
  return alive;
}

ExtValue joint_cylinder_value(const ProductSystem& product,
                              JointObjective objective, std::size_t start,
                              std::size_t start_depth,
                              std::span<const std::size_t> active_from,
                              std::span<const ExtValue> fixed) {
  const std::size_t k = product.num_components();
  if (active_from.size() != k || fixed.size() != k) {
    throw std::invalid_argument("joint_cylinder_value: arity mismatch");
  }
  for (const ExtValue& f : fixed) {
    if (f.is_plus_infinity()) return ExtValue::plus_infinity();
  }
  std::size_t horizon = start_depth;
  for (std::size_t d : active_from) horizon = std::max(horizon, d);

  // Candidate values per component: max(fixed_i, some output).
  std::vector<std::vector<Dyadic>> candidates(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (const Dyadic& o : product.component_outputs(i)) {
      if (fixed[i].is_finite() && o < fixed[i].value()) continue;
      candidates[i].push_back(o);
    }
    if (fixed[i].is_finite()) candidates[i].push_back(fixed[i].value());
    std::sort(candidates[i].begin(), candidates[i].end());
    candidates[i].erase(
        std::unique(candidates[i].begin(), candidates[i].end()),
        candidates[i].end());
  }

  auto feasible = [&](std::span<const Dyadic> bound) {
    std::vector<bool> frontier(product.num_states(), false);
    frontier[start] = true;
    for (std::size_t t = start_depth; t < horizon; ++t) {
      std::vector<bool> next(product.num_states(), false);
      for (std::size_t p = 0; p < product.num_states(); ++p) {
        if (!frontier[p]) continue;
        for (std::size_t j = 0; j < product.num_letters(); ++j) {
          bool ok = true;
          for (std::size_t i = 0; i < k && ok; ++i) {
            ok = t < active_from[i] || product.output(p, j, i) <= bound[i];
          }
          if (ok) next[product.next(p, j)] = true;
        }
      }
      frontier = std::move(next);
    }
    const std::vector<bool> alive = joint_infinite_run_states(product, bound);
    for (std::size_t p = 0; p < product.num_states(); ++p) {
      if (frontier[p] && alive[p]) return true;
    }
    return false;
  };

  if (objective == JointObjective::kMax) {
    ExtValue floor = ExtValue::minus_infinity();
    for (const ExtValue& f : fixed) floor = max(floor, f);
    std::vector<Dyadic> thresholds;
    for (const auto& c : candidates) {
      for (const Dyadic& d : c) {
        if (floor <= ExtValue(d)) thresholds.push_back(d);
      }
    }
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                     thresholds.end());
    for (const Dyadic& theta : thresholds) {
      const std::vector<Dyadic> bound(k, theta);
      if (feasible(bound)) return ExtValue(theta);
    }
    throw std::logic_error("joint_cylinder_value: no feasible threshold");
  }

  // Sum: enumerate candidate vectors; the objective is monotone, so the
  // best feasible vector gives the exact minimum.
  std::optional<ExtValue> best;
  std::vector<Dyadic> bound(k);
  std::vector<std::size_t> index(k, 0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) bound[i] = candidates[i][index[i]];
    std::vector<ExtValue> values(bound.begin(), bound.end());
    const ExtValue value = combine(objective, values);
    if ((!best || value < *best) && feasible(bound)) best = value;
    std::size_t i = 0;
    while (i < k && ++index[i] == candidates[i].size()) index[i++] = 0;
    if (i == k) break;
  }
  if (!best) throw std::logic_error("joint_cylinder_value: nothing feasible");
  return *best;
}

ExtValue joint_minmax(const NodeAutomaton& u1, const NodeAutomaton& u2,
                      JointObjective objective, std::size_t q1,
                      std::size_t q2, const ExtValue& fixed1,
                      const ExtValue& fixed2) {
  const ProductSystem product({u1, u2});
  const std::size_t qs[] = {q1, q2};
  const std::size_t active[] = {0, 0};
  const ExtValue fixed[] = {fixed1, fixed2};
  return joint_cylinder_value(product, objective, product.encode(qs), 0,
                              active, fixed);
}

ParetoTails::ParetoTails(const ProductSystem& product)
    : frontier_(product.num_states()) {
  const std::size_t k = product.num_components();
  std::vector<std::size_t> index(k, 0);
  std::vector<Dyadic> bound(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) {
      bound[i] = product.component_outputs(i)[index[i]];
    }
    const std::vector<bool> alive = joint_infinite_run_states(product, bound);
    for (std::size_t p = 0; p < product.num_states(); ++p) {
      if (alive[p]) frontier_[p].push_back(bound);
    }
    std::size_t i = 0;
    while (i < k && ++index[i] == product.component_outputs(i).size()) {
      index[i++] = 0;
    }
    if (i == k) break;
  }
  auto dominates = [](const std::vector<Dyadic>& a,
                      const std::vector<Dyadic>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (b[i] < a[i]) return false;
    }
    return true;
  };
  for (auto& list : frontier_) {
    std::vector<std::vector<Dyadic>> minimal;
    for (const auto& a : list) {
      bool dominated = false;
      for (const auto& b : list) {
        if (&a != &b && dominates(b, a) && b != a) {
          dominated = true;
          break;
        }
      }
      if (!dominated) minimal.push_back(a);
    }
    list = std::move(minimal);
  }
}

ExtValue ParetoTails::value_with_fixed(std::size_t state,
                                       JointObjective objective,
                                       std::span<const ExtValue> fixed) const {
  std::optional<ExtValue> best;
  std::vector<ExtValue> values(fixed.size());
  for (const auto& tail : frontier_[state]) {
    for (std::size_t i = 0; i < tail.size(); ++i) {
      values[i] = max(fixed[i], ExtValue(tail[i]));
    }
    const ExtValue v = combine(objective, values);
    if (!best || v < *best) best = v;
  }
  if (!best) throw std::logic_error("ParetoTails: empty frontier");
  return *best;
}

ReachableSequence reachable_sequence(
    std::size_t start, std::size_t num_states,
    const std::function<void(std::size_t, std::vector<std::size_t>&)>&
        successors,
    std::size_t cap) {
  ReachableSequence out;
  std::map<std::vector<std::size_t>, std::size_t> seen;
  std::vector<std::size_t> current{start};
  std::vector<std::size_t> succ;
  for (std::size_t step = 0;; ++step) {
    if (auto it = seen.find(current); it != seen.end()) {
      out.repeat_from = it->second;
      return out;
    }
    if (step > cap) {
      throw StabilizationError("reachable-set sequence did not repeat within " +
                               std::to_string(cap) + " steps");
    }
    seen.emplace(current, out.sets.size());
    out.sets.push_back(current);
    std::vector<bool> mark(num_states, false);
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      succ.clear();
      successors(p, succ);
      for (std::size_t r : succ) {
        if (!mark[r]) {
          mark[r] = true;
          next.push_back(r);
        }
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
}

}  // namespace limsup
