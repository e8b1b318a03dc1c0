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

#ifndef LIMSUP_FAMILY_H_
#define LIMSUP_FAMILY_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "limsup/automaton.h"
#include "limsup/dyadic.h"
#include "limsup/joint.h"
#include "limsup/tree.h"

namespace limsup {

// A non-increasing sequence g_0 >= g_1 >= ... of lower semicontinuous
// functions, presented through cylinder infima
//   node_inf(n, s) = inf { g_n(y) : y extends s }.
// Implementations guarantee:
//   * node_inf(n, s) <= node_inf(n, s + a) and node_inf(n + 1, s) <=
//     node_inf(n, s);
//   * finite values are attained and lie on the 2^-grid_exponent(n) grid;
//   * node_inf(n, s) is constant in n for n >= stable_level(s).
class GridLscFamily {
 public:
  virtual ~GridLscFamily() = default;

  virtual ExtValue node_inf(std::size_t n, std::span<const Letter> s) const = 0;
  // node_inf(n, s) for n = 0..n_max.
  virtual std::vector<ExtValue> levels(std::span<const Letter> s,
                                       std::size_t n_max) const;
  virtual std::size_t stable_level(std::span<const Letter> s) const = 0;
  // inf over all n of node_inf(n, s).
  virtual ExtValue inf_all(std::span<const Letter> s) const {
    return node_inf(stable_level(s), s);
  }
  virtual std::uint32_t grid_exponent(std::size_t n) const = 0;
  // sup over n of grid_exponent(n).
  virtual std::uint32_t grid_bound() const = 0;
  // Size of the finite-state system behind the family; bounds transients.
  virtual std::size_t state_count() const = 0;
  virtual TreeSpec tree() const = 0;
};

using FamilyPtr = std::shared_ptr<const GridLscFamily>;

// g_n(x) = sup { u(x_0..x_t) : t >= n }.
class AutomatonFamily final : public GridLscFamily {
 public:
  explicit AutomatonFamily(NodeAutomaton u);

  ExtValue node_inf(std::size_t n, std::span<const Letter> s) const override;
  std::vector<ExtValue> levels(std::span<const Letter> s,
                               std::size_t n_max) const override;
  std::size_t stable_level(std::span<const Letter> s) const override;
  std::uint32_t grid_exponent(std::size_t) const override { return grid_; }
  std::uint32_t grid_bound() const override { return grid_; }
  std::size_t state_count() const override { return u_.num_states(); }
  TreeSpec tree() const override { return u_.tree(); }

  const NodeAutomaton& automaton() const { return u_; }
  const std::vector<Dyadic>& minmax() const { return minmax_; }

 private:
  // Value at level |s| + k for a prefix ending in state q.
  const Dyadic& deep_value(std::size_t q, std::size_t k) const;

  NodeAutomaton u_;
  std::uint32_t grid_;
  std::vector<Dyadic> minmax_;
  // deep_[q][k] = min over states reachable from q in exactly k steps of
  // minmax; constant from deep_[q].size() - 1 on.
  std::vector<std::vector<Dyadic>> deep_;
};

FamilyPtr family_from_automaton(const NodeAutomaton& u);

// One lower semicontinuous function g(x) = sup { u(x_0..x_t) : t >= depth }.
struct LscLevel {
  NodeAutomaton automaton;
  std::size_t depth = 0;
};

// Level n is the pointwise max of levels n..N of the input list, with
// g_m = g_N for m >= N.
class RegularizedFamily final : public GridLscFamily {
 public:
  explicit RegularizedFamily(std::vector<LscLevel> levels);

  ExtValue node_inf(std::size_t n, std::span<const Letter> s) const override;
  std::size_t stable_level(std::span<const Letter>) const override {
    return depths_.size() - 1;
  }
  std::uint32_t grid_exponent(std::size_t) const override { return grid_; }
  std::uint32_t grid_bound() const override { return grid_; }
  std::size_t state_count() const override;
  TreeSpec tree() const override { return product_.tree(); }

  // Pointwise value of level n on a branch.
  Dyadic level_value(std::size_t n, const EventuallyPeriodicBranch& x) const;

 private:
  ProductSystem product_;
  // tails_[m - 1] is the product of levels m..N.
  std::vector<ProductSystem> tails_;
  std::vector<std::size_t> depths_;
  std::uint32_t grid_ = 0;
};

FamilyPtr regularize_nonincreasing(std::vector<LscLevel> levels);

// Rounds level n up to the 2^-n grid.
class DiscretizedFamily final : public GridLscFamily {
 public:
  explicit DiscretizedFamily(FamilyPtr inner);

  ExtValue node_inf(std::size_t n, std::span<const Letter> s) const override;
  std::vector<ExtValue> levels(std::span<const Letter> s,
                               std::size_t n_max) const override;
  std::size_t stable_level(std::span<const Letter> s) const override;
  std::uint32_t grid_exponent(std::size_t n) const override;
  std::uint32_t grid_bound() const override { return inner_->grid_bound(); }
  std::size_t state_count() const override { return inner_->state_count(); }
  TreeSpec tree() const override { return inner_->tree(); }

 private:
  FamilyPtr inner_;
};

FamilyPtr discretize(FamilyPtr family);

enum class AlgebraOp { kSum, kMin, kMax };

// Level n is g^1_n (op) g^2_n for the automaton families of u1 and u2.
class AlgebraFamily final : public GridLscFamily {
 public:
  AlgebraFamily(const NodeAutomaton& u1, const NodeAutomaton& u2,
                AlgebraOp op);

  ExtValue node_inf(std::size_t n, std::span<const Letter> s) const override;
  std::vector<ExtValue> levels(std::span<const Letter> s,
                               std::size_t n_max) const override;
  std::size_t stable_level(std::span<const Letter> s) const override;
  std::uint32_t grid_exponent(std::size_t) const override { return grid_; }
  std::uint32_t grid_bound() const override { return grid_; }
  std::size_t state_count() const override { return product_.num_states(); }
  TreeSpec tree() const override { return product_.tree(); }

  AlgebraOp op() const { return op_; }
  const ProductSystem& product() const { return product_; }

 private:
  JointObjective objective() const;
  const ExtValue& deep_value(std::size_t p, std::size_t k) const;

  AlgebraOp op_;
  ProductSystem product_;
  AutomatonFamily left_;
  AutomatonFamily right_;
  std::uint32_t grid_;
  std::unique_ptr<ParetoTails> tails_;
  std::vector<std::vector<ExtValue>> deep_;
};

// Hard cap on reachable-set stabilization: 2^|states|, clamped.
std::size_t stabilization_cap(std::size_t states);

}  // namespace limsup

#endif  // LIMSUP_FAMILY_H_
