// Copyright 2026 The ptheta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Standalone acceptance gate: one line per criterion, exit 0 iff all pass.
// Optional argv[1] sets the worker count for the Monte Carlo criteria.

#include <cstdlib>
#include <iostream>

#include "ptheta/acceptance.hpp"

int main(int argc, char** argv) {
  int workers = 1;
  if (argc > 1) workers = std::atoi(argv[1]);
  if (workers < 1) workers = 1;
  auto results = ptheta::acceptance::run_all(workers);
  ptheta::acceptance::print_results(std::cout, results);
  return ptheta::acceptance::all_passed(results) ? 0 : 1;
}
