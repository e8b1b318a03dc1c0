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


// Runs every acceptance criterion and prints one line per criterion.
// Usage: limsup_acceptance [seed]

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "limsup/suite.h"

int main(int argc, char** argv) {
  limsup::SuiteOptions options;
  if (argc > 1) options.seed = std::stoull(argv[1]);
  options.jobs = std::max(1u, std::thread::hardware_concurrency());
  const limsup::SuiteReport report = limsup::run_suite(options);
  std::cout << report.text();
  return report.passed() ? EXIT_SUCCESS : EXIT_FAILURE;
}
