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

#ifndef LIMSUP_RANDOM_H_
#define LIMSUP_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace limsup {

using Rng = std::mt19937_64;

// Splits one seed into independent named streams ("corpus", "opponents",
// "branches", ...), so adding draws to one stream leaves the others intact.
class SeedSplitter {
 public:
  explicit SeedSplitter(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t derive(std::string_view name) const;
  Rng stream(std::string_view name) const { return Rng(derive(name)); }

 private:
  std::uint64_t seed_;
};

// Uniform integer in [lo, hi]. Implemented without std distributions so that
// draws are identical across standard libraries.
std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi);

}  // namespace limsup

#endif  // LIMSUP_RANDOM_H_
