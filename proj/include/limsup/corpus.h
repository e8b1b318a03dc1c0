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

#ifndef LIMSUP_CORPUS_H_
#define LIMSUP_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "limsup/automaton.h"
#include "limsup/random.h"

namespace limsup {

struct AutomatonShape {
  std::size_t min_states = 1;
  std::size_t max_states = 4;
  std::size_t letters = 2;
  // Outputs are z / 2^grid with lo <= z / 2^grid <= hi.
  std::uint32_t grid = 3;
  std::int64_t lo = -2;
  std::int64_t hi = 2;
};

NodeAutomaton random_automaton(Rng& rng, const AutomatonShape& shape = {});
std::vector<NodeAutomaton> automaton_corpus(Rng& rng, std::size_t count,
                                            const AutomatonShape& shape = {});

// A function f together with machines for f and -f. States only move
// upward (or stay), so every run settles in one state and the output there
// depends on the state alone: limsup u_f = -limsup u_neg holds on every
// branch. Outputs on state-changing transitions are scrambled independently
// in both machines.
struct BairePair {
  NodeAutomaton u_f;
  NodeAutomaton u_neg;
};

BairePair random_baire_pair(Rng& rng, const AutomatonShape& shape = {});

}  // namespace limsup

#endif  // LIMSUP_CORPUS_H_
