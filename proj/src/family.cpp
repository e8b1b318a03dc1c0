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

#include "limsup/family.h"

#include <algorithm>
#include <stdexcept>

namespace limsup {
namespace {

// suffix[n] = max of outputs[n..], -inf past the end.
std::vector<ExtValue> suffix_max(const std::vector<Dyadic>& outputs) {
  std::vector<ExtValue> out(outputs.size() + 1, ExtValue::minus_infinity());
  for (std::size_t t = outputs.size(); t-- > 0;) {
    out[t] = max(out[t + 1], ExtValue(outputs[t]));
  }
  return out;
}

template <typename Value>
void check_settled(const std::vector<Value>& values, std::size_t from) {
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k - 1] < values[k]) {
      throw std::logic_error("family level sequence increased in n");
    }
  }
  for (std::size_t k = from; k < values.size(); ++k) {
    if (values[k] != values[from]) {
      throw std::logic_error("family level sequence failed to settle");
    }
  }
}

}  // namespace

std::size_t stabilization_cap(std::size_t states) {
  return states >= 20 ? (std::size_t{1} << 20) : (std::size_t{1} << states);
}

std::vector<ExtValue> GridLscFamily::levels(std::span<const Letter> s,
                                            std::size_t n_max) const {
  std::vector<ExtValue> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(node_inf(n, s));
  return out;
}

AutomatonFamily::AutomatonFamily(NodeAutomaton u)
    : u_(std::move(u)), grid_(u_.grid_exponent()), minmax_(minmax_values(u_)) {
  const auto successors = [this](std::size_t q, std::vector<std::size_t>& out) {
    for (std::size_t c = 0; c < u_.num_classes(); ++c) {
      out.push_back(u_.transition(q, c).next);
    }
  };
  deep_.resize(u_.num_states());
  for (std::size_t q = 0; q < u_.num_states(); ++q) {
    const ReachableSequence seq = reachable_sequence(
        q, u_.num_states(), successors, stabilization_cap(u_.num_states()));
    std::vector<Dyadic> values;
    for (const auto& set : seq.sets) {
      Dyadic best = minmax_[set.front()];
      for (std::size_t p : set) best = min(best, minmax_[p]);
      values.push_back(best);
    }
    check_settled(values, seq.repeat_from);
    values.resize(seq.repeat_from + 1);
    deep_[q] = std::move(values);
  }
}

const Dyadic& AutomatonFamily::deep_value(std::size_t q, std::size_t k) const {
  const auto& values = deep_[q];
  return values[std::min(k, values.size() - 1)];
}

ExtValue AutomatonFamily::node_inf(std::size_t n,
                                   std::span<const Letter> s) const {
  std::size_t q = u_.initial();
  ExtValue fixed = ExtValue::minus_infinity();
  for (std::size_t t = 0; t < s.size(); ++t) {
    const auto& tr = u_.step(q, s[t]);
    if (t >= n) fixed = max(fixed, ExtValue(tr.output));
    q = tr.next;
  }
  if (n >= s.size()) return deep_value(q, n - s.size());
  return max(fixed, ExtValue(minmax_[q]));
}

std::vector<ExtValue> AutomatonFamily::levels(std::span<const Letter> s,
                                              std::size_t n_max) const {
  const std::vector<Dyadic> outputs = u_.outputs_along(s);
  const std::vector<ExtValue> suffix = suffix_max(outputs);
  const std::size_t q = u_.state_after(s);
  std::vector<ExtValue> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n >= s.size()) {
      out.emplace_back(deep_value(q, n - s.size()));
    } else {
      out.push_back(max(suffix[n], ExtValue(minmax_[q])));
    }
  }
  return out;
}

std::size_t AutomatonFamily::stable_level(std::span<const Letter> s) const {
  return s.size() + deep_[u_.state_after(s)].size() - 1;
}

FamilyPtr family_from_automaton(const NodeAutomaton& u) {
  return std::make_shared<AutomatonFamily>(u);
}

namespace {

ProductSystem product_of_levels(const std::vector<LscLevel>& levels,
                                std::size_t from) {
  std::vector<NodeAutomaton> machines;
  for (std::size_t m = from; m < levels.size(); ++m) {
    machines.push_back(levels[m].automaton);
  }
  return ProductSystem(std::move(machines));
}

}  // namespace

RegularizedFamily::RegularizedFamily(std::vector<LscLevel> levels)
    : product_(levels.empty() ? throw std::invalid_argument(
                                    "regularize_nonincreasing: empty list")
                              : product_of_levels(levels, 0)) {
  for (const LscLevel& level : levels) {
    depths_.push_back(level.depth);
    grid_ = std::max(grid_, level.automaton.grid_exponent());
  }
  for (std::size_t m = 1; m < levels.size(); ++m) {
    tails_.push_back(product_of_levels(levels, m));
  }
}

std::size_t RegularizedFamily::state_count() const {
  return product_.num_states();
}

ExtValue RegularizedFamily::node_inf(std::size_t n,
                                     std::span<const Letter> s) const {
  const std::size_t top = depths_.size() - 1;
  const std::size_t first = std::min(n, top);
  const ProductSystem& product = first == 0 ? product_ : tails_[first - 1];
  const std::vector<std::vector<Dyadic>> outputs = product.outputs_along(s);
  std::vector<std::size_t> active;
  std::vector<ExtValue> fixed;
  for (std::size_t i = 0; i < product.num_components(); ++i) {
    const std::size_t depth = depths_[first + i];
    ExtValue f = ExtValue::minus_infinity();
    for (std::size_t t = depth; t < s.size(); ++t) {
      f = max(f, ExtValue(outputs[i][t]));
    }
    active.push_back(depth);
    fixed.push_back(f);
  }
  return joint_cylinder_value(product, JointObjective::kMax,
                              product.state_after(s), s.size(), active, fixed);
}

Dyadic RegularizedFamily::level_value(std::size_t n,
                                      const EventuallyPeriodicBranch& x) const {
  const std::size_t top = depths_.size() - 1;
  std::optional<Dyadic> best;
  for (std::size_t m = std::min(n, top); m <= top; ++m) {
    const NodeAutomaton& u = product_.component(m);
    const LassoSummary lasso = lasso_summary(u, x);
    const std::size_t start = lasso.transient_outputs.size();
    const std::size_t period = lasso.cycle_outputs.size();
    const std::size_t end = std::max(depths_[m], start) + period;
    const std::vector<Dyadic> outputs = u.outputs_along(x.take(end));
    for (std::size_t t = depths_[m]; t < end; ++t) {
      best = best ? max(*best, outputs[t]) : outputs[t];
    }
  }
  return *best;
}

FamilyPtr regularize_nonincreasing(std::vector<LscLevel> levels) {
  return std::make_shared<RegularizedFamily>(std::move(levels));
}

DiscretizedFamily::DiscretizedFamily(FamilyPtr inner)
    : inner_(std::move(inner)) {
  if (!inner_) throw std::invalid_argument("discretize: null family");
}

namespace {

ExtValue ceil_level(const ExtValue& v, std::size_t n) {
  if (!v.is_finite()) return v;
  return ExtValue(v.value().ceil_to_grid(static_cast<std::uint32_t>(n)));
}

}  // namespace

ExtValue DiscretizedFamily::node_inf(std::size_t n,
                                     std::span<const Letter> s) const {
  return ceil_level(inner_->node_inf(n, s), n);
}

std::vector<ExtValue> DiscretizedFamily::levels(std::span<const Letter> s,
                                                std::size_t n_max) const {
  std::vector<ExtValue> out = inner_->levels(s, n_max);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = ceil_level(out[n], n);
  return out;
}

std::size_t DiscretizedFamily::stable_level(std::span<const Letter> s) const {
  return std::max<std::size_t>(inner_->stable_level(s), inner_->grid_bound());
}

std::uint32_t DiscretizedFamily::grid_exponent(std::size_t n) const {
  return std::min<std::uint32_t>(static_cast<std::uint32_t>(n),
                                 inner_->grid_exponent(n));
}

FamilyPtr discretize(FamilyPtr family) {
  return std::make_shared<DiscretizedFamily>(std::move(family));
}

AlgebraFamily::AlgebraFamily(const NodeAutomaton& u1, const NodeAutomaton& u2,
                             AlgebraOp op)
    : op_(op),
      product_({u1, u2}),
      left_(u1),
      right_(u2),
      grid_(std::max(u1.grid_exponent(), u2.grid_exponent())) {
  if (u1.num_letters() != u2.num_letters() ||
      u1.has_default() != u2.has_default()) {
    throw std::invalid_argument(
        "algebra: both automata must read the same alphabet");
  }
  if (op_ == AlgebraOp::kMin) return;
  tails_ = std::make_unique<ParetoTails>(product_);
  const ExtValue none[] = {ExtValue::minus_infinity(),
                           ExtValue::minus_infinity()};
  std::vector<ExtValue> joint(product_.num_states());
  for (std::size_t p = 0; p < product_.num_states(); ++p) {
    joint[p] = tails_->value_with_fixed(p, objective(), none);
  }
  const auto successors = [this](std::size_t p,
                                 std::vector<std::size_t>& out) {
    for (std::size_t j = 0; j < product_.num_letters(); ++j) {
      out.push_back(product_.next(p, j));
    }
  };
  deep_.resize(product_.num_states());
  for (std::size_t p = 0; p < product_.num_states(); ++p) {
    const ReachableSequence seq =
        reachable_sequence(p, product_.num_states(), successors,
                           stabilization_cap(product_.num_states()));
    std::vector<ExtValue> values;
    for (const auto& set : seq.sets) {
      ExtValue best = joint[set.front()];
      for (std::size_t r : set) best = min(best, joint[r]);
      values.push_back(best);
    }
    check_settled(values, seq.repeat_from);
    values.resize(seq.repeat_from + 1);
    deep_[p] = std::move(values);
  }
}

JointObjective AlgebraFamily::objective() const {
  return op_ == AlgebraOp::kSum ? JointObjective::kSum : JointObjective::kMax;
}

const ExtValue& AlgebraFamily::deep_value(std::size_t p, std::size_t k) const {
  const auto& values = deep_[p];
  return values[std::min(k, values.size() - 1)];
}

ExtValue AlgebraFamily::node_inf(std::size_t n,
                                 std::span<const Letter> s) const {
  if (op_ == AlgebraOp::kMin) {
    return min(left_.node_inf(n, s), right_.node_inf(n, s));
  }
  const std::size_t p = product_.state_after(s);
  if (n >= s.size()) return deep_value(p, n - s.size());
  const std::vector<std::vector<Dyadic>> outputs = product_.outputs_along(s);
  ExtValue fixed[2];
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t t = n; t < s.size(); ++t) {
      fixed[i] = max(fixed[i], ExtValue(outputs[i][t]));
    }
  }
  return tails_->value_with_fixed(p, objective(), fixed);
}

std::vector<ExtValue> AlgebraFamily::levels(std::span<const Letter> s,
                                            std::size_t n_max) const {
  if (op_ == AlgebraOp::kMin) {
    std::vector<ExtValue> a = left_.levels(s, n_max);
    const std::vector<ExtValue> b = right_.levels(s, n_max);
    for (std::size_t n = 0; n < a.size(); ++n) a[n] = min(a[n], b[n]);
    return a;
  }
  const std::size_t p = product_.state_after(s);
  const std::vector<std::vector<Dyadic>> outputs = product_.outputs_along(s);
  const std::vector<ExtValue> left = suffix_max(outputs[0]);
  const std::vector<ExtValue> right = suffix_max(outputs[1]);
  std::vector<ExtValue> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n >= s.size()) {
      out.push_back(deep_value(p, n - s.size()));
    } else {
      const ExtValue fixed[] = {left[n], right[n]};
      out.push_back(tails_->value_with_fixed(p, objective(), fixed));
    }
  }
  return out;
}

std::size_t AlgebraFamily::stable_level(std::span<const Letter> s) const {
  if (op_ == AlgebraOp::kMin) {
    return std::max(left_.stable_level(s), right_.stable_level(s));
  }
  return s.size() + deep_[product_.state_after(s)].size() - 1;
}

}  // namespace limsup
