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

// Submodular cover and knapsack with a submodular cost, and minimization of
// a difference of submodular functions. Each procedure iterates modular
// bounds from the bounds module and hands the surrogate to a solver from
// the maximize or minimize modules.

#ifndef SUBMEMO_CONSTRAINED_HPP_
#define SUBMEMO_CONSTRAINED_HPP_

#include <cstdint>
#include <vector>

#include "submemo/core.hpp"

namespace submemo {

struct IterativeResult {
  Subset set;
  double objective = 0.0;  // best tracked objective
  // Best-so-far objective after each iteration.
  std::vector<double> trace;
  int iterations = 0;
  bool hit_iteration_cap = false;
  EvalCounters counters;  // f and g together, clones included
};

// Lazy cost-ratio greedy for min cost(X) s.t. g(X) >= c. Elements with
// non-positive cost are taken first.
Subset submodular_set_cover(SetFunction& g, const ModularFunction& cost,
                            double c);

// min f(X) s.t. g(X) >= c.
IterativeResult scsc_solve(SetFunction& f, SetFunction& g, double c,
                           int max_iterations = 50);

// max g(X) s.t. f(X) <= b. Every iterate satisfies f(X) <= b.
IterativeResult scsk_solve(SetFunction& f, SetFunction& g, double b,
                           int max_iterations = 50);

enum class DsVariant { kSubSup, kSupSub, kModMod };

// min f(X) - g(X). The seed shuffles the order used to break ties inside
// the subgradients of g; seed 0 keeps ascending ids.
IterativeResult ds_minimize(SetFunction& f, SetFunction& g, DsVariant variant,
                            std::uint64_t seed = 0, int max_iterations = 50);

}  // namespace submemo

#endif  // SUBMEMO_CONSTRAINED_HPP_
