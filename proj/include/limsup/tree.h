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

#ifndef LIMSUP_TREE_H_
#define LIMSUP_TREE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace limsup {

// Elements of the countable alphabet are natural numbers.
using Letter = std::uint64_t;
using Prefix = std::vector<Letter>;

Prefix extend(const Prefix& s, Letter a);
// Requires a nonempty prefix.
Prefix parent(const Prefix& s);
bool is_prefix_of(std::span<const Letter> s, std::span<const Letter> t);

// Comma separated letters; the empty prefix is the empty string.
std::string prefix_to_string(std::span<const Letter> s);
Prefix parse_prefix(std::string_view text);

struct PrefixHash {
  std::size_t operator()(const Prefix& s) const noexcept;
};

// A pruned tree given by a membership test and a child witness. Full trees
// (every letter below the arity, or every natural) are the common case and
// are flagged so that the game engine can certify lassos.
class TreeSpec {
 public:
  using Membership = std::function<bool(std::span<const Letter>)>;
  using ChildWitness = std::function<Letter(std::span<const Letter>)>;

  TreeSpec(Membership membership, ChildWitness child_witness);

  // All sequences over {0, ..., arity-1}.
  static TreeSpec full(std::uint64_t arity);
  // All sequences of naturals.
  static TreeSpec full_naturals();

  bool contains(std::span<const Letter> s) const { return membership_(s); }
  Letter child(std::span<const Letter> s) const { return witness_(s); }

  bool is_full() const { return full_; }
  // Arity of a full finite tree; nullopt for the naturals or custom trees.
  std::optional<std::uint64_t> arity() const { return arity_; }

 private:
  Membership membership_;
  ChildWitness witness_;
  bool full_ = false;
  std::optional<std::uint64_t> arity_;
};

class BranchOutsideTree : public std::invalid_argument {
 public:
  BranchOutsideTree(const std::string& what, Prefix offending)
      : std::invalid_argument(what), offending_(std::move(offending)) {}
  const Prefix& offending_prefix() const { return offending_; }

 private:
  Prefix offending_;
};

// stem followed by cycle repeated forever.
class EventuallyPeriodicBranch {
 public:
  EventuallyPeriodicBranch(Prefix stem, Prefix cycle);

  // Validates that the prefixes lie in `tree`. For full trees this is exact;
  // otherwise prefixes are checked through depth |stem| + 2|cycle|.
  static EventuallyPeriodicBranch in_tree(Prefix stem, Prefix cycle,
                                          const TreeSpec& tree);

  const Prefix& stem() const { return stem_; }
  const Prefix& cycle() const { return cycle_; }

  Letter letter_at(std::size_t t) const;
  // (x_0, ..., x_t), length t + 1.
  Prefix prefix(std::size_t t) const;
  // First n letters.
  Prefix take(std::size_t n) const;

  // Shortest stem and primitive cycle describing the same branch.
  EventuallyPeriodicBranch canonical() const;

  // "stem=1,0;cycle=0,1"
  std::string to_string() const;
  static EventuallyPeriodicBranch parse(std::string_view text);

  friend bool operator==(const EventuallyPeriodicBranch&,
                         const EventuallyPeriodicBranch&) = default;

 private:
  Prefix stem_;
  Prefix cycle_;
};

// Branch prefix as used by the limsup evaluation: (x_0, ..., x_t).
inline Prefix branch_prefix(const EventuallyPeriodicBranch& x, std::size_t t) {
  return x.prefix(t);
}

// All branches over {0..arity-1} with |stem| <= max_stem and
// 1 <= |cycle| <= max_cycle, in a fixed order.
std::vector<EventuallyPeriodicBranch> enumerate_branches(
    std::uint64_t arity, std::size_t max_stem, std::size_t max_cycle);

}  // namespace limsup

#endif  // LIMSUP_TREE_H_
