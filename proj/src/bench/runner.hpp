// Copyright 2026 The Submemo Authors.
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

#ifndef SUBMEMO_SRC_BENCH_RUNNER_HPP_
#define SUBMEMO_SRC_BENCH_RUNNER_HPP_

#include <memory>
#include <string>
#include <vector>

#include "submemo/bench.hpp"

namespace submemo::detail {

struct RunSettings {
  Element k = 1;
  double epsilon = 0.1;
  Element machines = 2;
  std::uint64_t seed = 0;
  int iterations = 10000;
};

std::unique_ptr<SetFunction> instantiate(const FunctionSpec& spec,
                                         CostModel mode);

bool takes_budget(const std::string& algorithm);
const std::vector<std::string>& maximize_algorithms();

// Runs one maximization algorithm by name. Throws InputError for unknown
// names.
MaximizationResult run_maximizer(const std::string& algorithm, SetFunction& f,
                                 const RunSettings& s);

// Random set with each element included with probability 1/2.
Subset random_half(Element n, std::uint64_t seed);

Element budget_to_k(double fraction, Element n);

}  // namespace submemo::detail

#endif  // SUBMEMO_SRC_BENCH_RUNNER_HPP_
