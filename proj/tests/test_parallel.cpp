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

#include <doctest.h>

#include <cstdlib>
#include <stdexcept>

#include "hlab/parallel.hpp"

using namespace hlab;

TEST_CASE("parallel_map keeps order") {
  std::vector<int> in(100);
  for (int i = 0; i < 100; ++i) in[i] = i;
  const auto out = parallel_map(in, [](const int& x) { return x * x; });
  REQUIRE(out.size() == 100);
  for (int i = 0; i < 100; ++i) CHECK(out[i] == i * i);
  CHECK(parallel_map(std::vector<int>{}, [](const int& x) { return x; }).empty());
}

TEST_CASE("parallel_map rethrows worker errors") {
  std::vector<int> in{1, 2, 3, 4, 5, 6};
  CHECK_THROWS_AS(parallel_map(in,
                               [](const int& x) {
                                 if (x == 4) throw std::runtime_error("boom");
                                 return x;
                               }),
                  std::runtime_error);
}

TEST_CASE("thread count follows the environment") {
  setenv("HOLONOMY_LAB_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("HOLONOMY_LAB_THREADS", "0", 1);
  CHECK(worker_count() >= 1);
  unsetenv("HOLONOMY_LAB_THREADS");
  CHECK(worker_count() >= 1);
}
