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

#include "limsup/tree.h"

#include <algorithm>
#include <charconv>

namespace limsup {

Prefix extend(const Prefix& s, Letter a) {
  Prefix out;
  out.reserve(s.size() + 1);
  out.assign(s.begin(), s.end());
  out.push_back(a);
  return out;
}

Prefix parent(const Prefix& s) {
  if (s.empty()) throw std::invalid_argument("parent of the empty prefix");
  return Prefix(s.begin(), s.end() - 1);
}

bool is_prefix_of(std::span<const Letter> s, std::span<const Letter> t) {
  return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

std::string prefix_to_string(std::span<const Letter> s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

Prefix parse_prefix(std::string_view text) {
  Prefix out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    Letter a = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), a);
    if (ec != std::errc() || p != item.data() + item.size() || item.empty()) {
      throw std::invalid_argument("malformed prefix '" + std::string(text) +
                                  "'");
    }
    out.push_back(a);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::size_t PrefixHash::operator()(const Prefix& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull ^ s.size();
  for (Letter a : s) {
    h ^= a + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

TreeSpec::TreeSpec(Membership membership, ChildWitness child_witness)
    : membership_(std::move(membership)), witness_(std::move(child_witness)) {}

TreeSpec TreeSpec::full(std::uint64_t arity) {
  if (arity == 0) throw std::invalid_argument("tree arity must be positive");
  TreeSpec t(
      [arity](std::span<const Letter> s) {
        return std::all_of(s.begin(), s.end(),
                           [arity](Letter a) { return a < arity; });
      },
      [](std::span<const Letter>) { return Letter{0}; });
  t.full_ = true;
  t.arity_ = arity;
  return t;
}

TreeSpec TreeSpec::full_naturals() {
  TreeSpec t([](std::span<const Letter>) { return true; },
             [](std::span<const Letter>) { return Letter{0}; });
  t.full_ = true;
  return t;
}

EventuallyPeriodicBranch::EventuallyPeriodicBranch(Prefix stem, Prefix cycle)
    : stem_(std::move(stem)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) {
    throw std::invalid_argument("eventually periodic branch needs a cycle");
  }
}

EventuallyPeriodicBranch EventuallyPeriodicBranch::in_tree(
    Prefix stem, Prefix cycle, const TreeSpec& tree) {
  EventuallyPeriodicBranch x(std::move(stem), std::move(cycle));
  const std::size_t depth = x.stem_.size() + 2 * x.cycle_.size();
  Prefix s;
  for (std::size_t t = 0; t < depth; ++t) {
    s.push_back(x.letter_at(t));
    if (!tree.contains(s)) {
      throw BranchOutsideTree(
          "branch " + x.to_string() + " leaves the tree at prefix [" +
              prefix_to_string(s) + "]",
          s);
    }
  }
  return x;
}

Letter EventuallyPeriodicBranch::letter_at(std::size_t t) const {
  if (t < stem_.size()) return stem_[t];
  return cycle_[(t - stem_.size()) % cycle_.size()];
}

Prefix EventuallyPeriodicBranch::prefix(std::size_t t) const {
  return take(t + 1);
}

Prefix EventuallyPeriodicBranch::take(std::size_t n) const {
  Prefix out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = letter_at(t);
  return out;
}

EventuallyPeriodicBranch EventuallyPeriodicBranch::canonical() const {
  // Primitive root of the cycle.
  Prefix cycle = cycle_;
  const std::size_t n = cycle.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) {
      periodic = cycle[i] == cycle[i - p];
    }
    if (periodic) {
      cycle.resize(p);
      break;
    }
  }
  // Roll the stem into the cycle while its last letter matches.
  Prefix stem = stem_;
  while (!stem.empty() && stem.back() == cycle.back()) {
    stem.pop_back();
    std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
  }
  return EventuallyPeriodicBranch(std::move(stem), std::move(cycle));
}

std::string EventuallyPeriodicBranch::to_string() const {
  return "stem=" + prefix_to_string(stem_) +
         ";cycle=" + prefix_to_string(cycle_);
}

EventuallyPeriodicBranch EventuallyPeriodicBranch::parse(
    std::string_view text) {
  const auto semi = text.find(';');
  auto bad = [&]() -> EventuallyPeriodicBranch {
    throw std::invalid_argument("malformed branch '" + std::string(text) +
                                "', expected stem=...;cycle=...");
  };
  if (semi == std::string_view::npos) return bad();
  std::string_view a = text.substr(0, semi);
  std::string_view b = text.substr(semi + 1);
  if (a.substr(0, 5) != "stem=" || b.substr(0, 6) != "cycle=") return bad();
  return EventuallyPeriodicBranch(parse_prefix(a.substr(5)),
                                  parse_prefix(b.substr(6)));
}

std::vector<EventuallyPeriodicBranch> enumerate_branches(
    std::uint64_t arity, std::size_t max_stem, std::size_t max_cycle) {
  auto words_of_length = [arity](std::size_t len) {
    std::vector<Prefix> out{Prefix{}};
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<Prefix> next;
      for (const Prefix& w : out) {
        for (Letter a = 0; a < arity; ++a) next.push_back(extend(w, a));
      }
      out = std::move(next);
    }
    return out;
  };
  std::vector<EventuallyPeriodicBranch> out;
  for (std::size_t ls = 0; ls <= max_stem; ++ls) {
    for (const Prefix& stem : words_of_length(ls)) {
      for (std::size_t lc = 1; lc <= max_cycle; ++lc) {
        for (const Prefix& cycle : words_of_length(lc)) {
          out.emplace_back(stem, cycle);
        }
      }
    }
  }
  return out;
}

}  // namespace limsup
