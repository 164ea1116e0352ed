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

#ifndef SUBMEMO_MINIMIZE_HPP_
#define SUBMEMO_MINIMIZE_HPP_

#include <optional>
#include <variant>
#include <vector>

#include "submemo/bounds.hpp"
#include "submemo/core.hpp"

namespace submemo {

struct MinimizationResult {
  Subset minimizer_min;  // smallest minimizer found
  Subset minimizer_max;  // largest minimizer found, a superset of the above
  double value = 0.0;
  int iterations = 0;
  double gap = 0.0;  // final duality gap, where the method has one
  EvalCounters counters;
  // Objective of the tracked iterate, one entry per iteration.
  std::vector<double> objective;
  Eigen::VectorXd point;  // min-norm base, or the last Lovasz iterate
};

// argmax over the base polytope of <h, direction>: the extreme point whose
// order sorts `direction` descending, ties by ascending id.
ModularFunction linear_oracle(SetFunction& f, const Eigen::VectorXd& direction);

struct MinNormOptions {
  // Wolfe gap tolerance; default 1e-10 * max(1, |f(V)|).
  std::optional<double> tolerance;
  int max_iterations = 0;  // 0 picks 50 (n + 1) + 1000
};

// Thrown when the Wolfe iteration cap is hit.
class MinNormConvergenceError : public ConvergenceError {
 public:
  MinNormConvergenceError(const std::string& what, Eigen::VectorXd point,
                          double gap)
      : ConvergenceError(what), point_(std::move(point)), gap_(gap) {}
  const Eigen::VectorXd& point() const { return point_; }
  double gap() const { return gap_; }

 private:
  Eigen::VectorXd point_;
  double gap_;
};

// Fujishige-Wolfe minimum-norm base. Minimizers are read off the nested
// level sets {j : x_j <= t} of the min-norm point.
MinimizationResult min_norm_point(SetFunction& f,
                                  const MinNormOptions& options = {});

struct LovaszOptions {
  int iterations = 10000;
  double step_scale = 1.0;
};

// Projected subgradient descent on the Lovasz extension over [0, 1]^n with
// step step_scale * sqrt(n) / (|g| sqrt(t)). Returns the best level set of
// any visited iterate.
MinimizationResult lovasz_subgradient_min(SetFunction& f,
                                          const LovaszOptions& options = {});

// Feasible sets {Y : |Y| >= k}.
struct AtLeastK {
  Element k = 0;
};
// An explicit list of feasible sets.
struct SetFamily {
  std::vector<Subset> sets;
};
using Family = std::variant<AtLeastK, SetFamily>;

// Exact minimizer of a modular function over the family.
Subset minimize_modular(const ModularFunction& m, const Family& family);

// Majorization-minimization from the empty set with both supergradients,
// keeping the better candidate each round.
MinimizationResult mmin_constrained(SetFunction& f, const Family& family,
                                    int max_iterations = 50);

}  // namespace submemo

#endif  // SUBMEMO_MINIMIZE_HPP_
