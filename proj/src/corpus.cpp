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

#include "limsup/corpus.h"

#include <stdexcept>

namespace limsup {
namespace {

Dyadic random_output(Rng& rng, const AutomatonShape& shape) {
  const std::int64_t scale = std::int64_t{1} << shape.grid;
  const std::int64_t lo = shape.lo * scale;
  const std::int64_t hi = shape.hi * scale;
  const auto z = static_cast<std::int64_t>(
      uniform_int(rng, 0, static_cast<std::uint64_t>(hi - lo)));
  return Dyadic(lo + z, shape.grid);
}

void check_shape(const AutomatonShape& shape) {
  if (shape.min_states == 0 || shape.min_states > shape.max_states ||
      shape.letters == 0 || shape.lo > shape.hi) {
    throw std::invalid_argument("bad automaton shape");
  }
}

}  // namespace

NodeAutomaton random_automaton(Rng& rng, const AutomatonShape& shape) {
  check_shape(shape);
  const std::size_t n = uniform_int(rng, shape.min_states, shape.max_states);
  std::vector<NodeAutomaton::Transition> table;
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < shape.letters; ++a) {
      table.push_back({uniform_int(rng, 0, n - 1), random_output(rng, shape)});
    }
  }
  return NodeAutomaton(n, shape.letters, false, 0, std::move(table));
}

std::vector<NodeAutomaton> automaton_corpus(Rng& rng, std::size_t count,
                                            const AutomatonShape& shape) {
  std::vector<NodeAutomaton> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_automaton(rng, shape));
  }
  return out;
}

BairePair random_baire_pair(Rng& rng, const AutomatonShape& shape) {
  check_shape(shape);
  const std::size_t n = uniform_int(rng, shape.min_states, shape.max_states);
  std::vector<Dyadic> settled;
  for (std::size_t q = 0; q < n; ++q) {
    settled.push_back(random_output(rng, shape));
  }
  std::vector<NodeAutomaton::Transition> f_table;
  std::vector<NodeAutomaton::Transition> neg_table;
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < shape.letters; ++a) {
      const std::size_t next = uniform_int(rng, q, n - 1);
      if (next == q) {
        f_table.push_back({q, settled[q]});
        neg_table.push_back({q, -settled[q]});
      } else {
        f_table.push_back({next, random_output(rng, shape)});
        neg_table.push_back({next, random_output(rng, shape)});
      }
    }
  }
  return BairePair{NodeAutomaton(n, shape.letters, false, 0, f_table),
                   NodeAutomaton(n, shape.letters, false, 0, neg_table)};
}

}  // namespace limsup
