// Copyright 2026 The holonomy-lab Authors
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

// Prints one PASS/FAIL line per acceptance criterion. Exits non-zero when any
// criterion fails.

#include <iostream>

#include "hlab/acceptance.hpp"

int main() {
  hlab::AcceptanceOptions opts;
  bool all = true;
  hlab::run_acceptance(opts, [&](const hlab::CriterionResult& r) {
    std::cout << hlab::format_result(r) << std::endl;
    all = all && r.pass;
  });
  return all ? 0 : 1;
}
