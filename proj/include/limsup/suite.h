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

#ifndef LIMSUP_SUITE_H_
#define LIMSUP_SUITE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace limsup {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;
  // Smallest failing run, as "t,x_t,v_t,w_t" rows.
  std::string counterexample;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;  // sorted by name
  double seconds = 0;

  bool passed() const;
  // One line per criterion, then a total line.
  std::string text() const;
  std::string json() const;
};

struct SuiteOptions {
  std::uint64_t seed = 20260101;
  // Corrupts the fixture of the named criterion (only the first criterion
  // supports this).
  std::optional<std::string> tamper;
  // Criteria run on up to this many threads.
  std::size_t jobs = 1;
  // Run only criteria whose name contains this string.
  std::optional<std::string> filter;
};

std::vector<std::string> criterion_names();
SuiteReport run_suite(const SuiteOptions& options);

}  // namespace limsup

#endif  // LIMSUP_SUITE_H_
