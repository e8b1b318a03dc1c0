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

// Slow reference computations used to check the library. None of these
// share code paths with the implementations they check beyond
// NodeAutomaton::step and Dyadic arithmetic.

#ifndef LIMSUP_TESTS_ORACLES_H_
#define LIMSUP_TESTS_ORACLES_H_

#include <algorithm>
#include <optional>
#include <vector>

#include "limsup/automaton.h"
#include "limsup/dyadic.h"
#include "limsup/family.h"
#include "limsup/tree.h"

namespace limsup::oracle {

// Outputs of u along the first `length` letters of x, starting in state q.
inline std::vector<Dyadic> outputs(const NodeAutomaton& u,
                                   const EventuallyPeriodicBranch& x,
                                   std::size_t length, std::size_t q) {
  std::vector<Dyadic> out;
  for (std::size_t t = 0; t < length; ++t) {
    const auto& tr = u.step(q, x.letter_at(t));
    out.push_back(tr.output);
    q = tr.next;
  }
  return out;
}

// limsup by plain simulation: after |stem| + S*|cycle| steps the pair
// (state, cycle phase) has entered its cycle, whose length divides a
// window of S*|cycle| steps.
inline Dyadic limsup_from(const NodeAutomaton& u,
                          const EventuallyPeriodicBranch& x, std::size_t q,
                          std::size_t from_depth = 0) {
  const std::size_t window = u.num_states() * x.cycle().size();
  const std::size_t start =
      std::max(x.stem().size() + window, from_depth);
  const auto out = outputs(u, x, start + window, q);
  return *std::max_element(out.begin() + static_cast<std::ptrdiff_t>(start),
                           out.end());
}

inline Dyadic limsup(const NodeAutomaton& u, const EventuallyPeriodicBranch& x) {
  return limsup_from(u, x, u.initial());
}

// sup_{t >= n} u(x|t) on branch x.
inline Dyadic tail_sup(const NodeAutomaton& u, const EventuallyPeriodicBranch& x,
                       std::size_t n) {
  const std::size_t window = u.num_states() * x.cycle().size();
  const std::size_t end = std::max(n, x.stem().size() + window) + window;
  const auto out = outputs(u, x, end, u.initial());
  return *std::max_element(out.begin() + static_cast<std::ptrdiff_t>(n),
                           out.end());
}

// All words of length exactly k over {0..arity-1}.
inline std::vector<Prefix> words(std::size_t arity, std::size_t k) {
  std::vector<Prefix> out{Prefix{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Prefix> next;
    for (const Prefix& w : out) {
      for (Letter a = 0; a < arity; ++a) next.push_back(extend(w, a));
    }
    out = std::move(next);
  }
  return out;
}

// sup_{t >= 0} of the outputs along x when started in state q.
inline Dyadic run_sup(const NodeAutomaton& u, const EventuallyPeriodicBranch& x,
                      std::size_t q) {
  const std::size_t window = u.num_states() * x.cycle().size();
  const auto out = outputs(u, x, x.stem().size() + 2 * window, q);
  return *std::max_element(out.begin(), out.end());
}

// min over all lassos from state q of the largest output on the run (stem
// and cycle no longer than the number of states suffice for a simple path
// into a simple cycle).
inline Dyadic minmax(const NodeAutomaton& u, std::size_t q) {
  std::optional<Dyadic> best;
  const std::size_t s = u.num_states();
  for (const auto& x : enumerate_branches(u.num_letters(), s, s)) {
    const Dyadic v = run_sup(u, x, q);
    best = best ? min(*best, v) : v;
  }
  return *best;
}

// inf over branches y extending s of sup_{t >= n} u(y|t).
inline Dyadic node_inf(const NodeAutomaton& u, std::size_t n,
                       const Prefix& s) {
  const std::size_t k = u.num_states();
  const std::size_t pad = n > s.size() ? n - s.size() : 0;
  std::optional<Dyadic> best;
  for (const auto& tail : enumerate_branches(u.num_letters(), pad + k, k)) {
    Prefix stem = s;
    stem.insert(stem.end(), tail.stem().begin(), tail.stem().end());
    const EventuallyPeriodicBranch y(stem, tail.cycle());
    const Dyadic v = tail_sup(u, y, n);
    best = best ? min(*best, v) : v;
  }
  return *best;
}

// sup R(s) found by scanning r over the 2^-6 grid in [-8, 8] and testing
// the defining conditions of R_* and R_n directly:
//   r in R_*(s)  iff  h_n(s) > r for every n <= n_max
//   r in R_n(s)  iff  h_n(s) > r and h_n(s') <= r for every proper initial
//                     segment s' of s.
// Returns nullopt when no grid point is a member.
inline std::optional<Dyadic> grid_sup_r(const GridLscFamily& fam,
                                        const Prefix& s, std::size_t n_max) {
  // h[len][n] = node_inf(n, s restricted to its first len letters).
  std::vector<std::vector<ExtValue>> h(s.size() + 1);
  for (std::size_t len = 0; len <= s.size(); ++len) {
    const Prefix sp(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len));
    for (std::size_t n = 0; n <= n_max; ++n) h[len].push_back(fam.node_inf(n, sp));
  }
  std::optional<Dyadic> top;
  for (std::int64_t z = -8 * 64; z <= 8 * 64; ++z) {
    const ExtValue r(Dyadic(z, 6));
    bool star = true;
    bool some_n = false;
    for (std::size_t n = 0; n <= n_max; ++n) {
      const bool inside = h[s.size()][n] > r;
      star = star && inside;
      if (!inside || some_n) continue;
      bool proper_free = true;
      for (std::size_t len = 0; len < s.size() && proper_free; ++len) {
        proper_free = !(h[len][n] > r);
      }
      some_n = proper_free;
    }
    if (star || some_n) top = r.value();
  }
  if (!top) return std::nullopt;
  return *top + Dyadic::pow2_neg(6);
}

}  // namespace limsup::oracle

#endif  // LIMSUP_TESTS_ORACLES_H_
