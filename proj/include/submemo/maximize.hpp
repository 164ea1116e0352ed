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

// Maximization algorithms. All of them read gains through the memo of the
// function they are handed; none calls evaluate(). Argmax ties go to the
// smallest element id.

#ifndef SUBMEMO_MAXIMIZE_HPP_
#define SUBMEMO_MAXIMIZE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "submemo/bounds.hpp"
#include "submemo/core.hpp"

namespace submemo {

struct Constraint {
  enum class Kind { kCardinality, kKnapsack };

  Kind kind = Kind::kCardinality;
  Element k = 0;
  Eigen::VectorXd costs;
  double budget = 0.0;

  static Constraint cardinality(Element k);
  static Constraint knapsack(Eigen::VectorXd costs, double budget);

  // Throws InputError when no non-empty set can satisfy the constraint.
  void validate(Element n) const;
  double cost(const Subset& x) const;
};

struct TraceStep {
  Element element = -1;
  double gain = 0.0;
  // Gains computed to pick this element (n_R for lazy greedy).
  std::int64_t recomputes = 0;
};

struct MaximizationResult {
  Subset selected;
  double value = 0.0;
  EvalCounters counters;  // work done by the call, clones included
  std::vector<TraceStep> trace;
  // Objective after each accepted move or iteration.
  std::vector<double> objective;
  std::optional<std::uint64_t> seed;
};

MaximizationResult greedy_naive(SetFunction& f, const Constraint& c);

// Minoux's accelerated greedy; same output as greedy_naive on submodular f.
MaximizationResult greedy_lazy(SetFunction& f, const Constraint& c);

// Each step scores ceil((n / k) ln(1 / epsilon)) sampled elements.
MaximizationResult greedy_stochastic(SetFunction& f, Element k,
                                     double epsilon, std::uint64_t seed);

// Single pass over `stream`. One detached clone of `f` per live threshold;
// `f` itself is only used as a prototype.
MaximizationResult sieve_streaming(const SetFunction& f,
                                   std::span<const Element> stream, Element k,
                                   double epsilon);

// Lazy greedy on m random parts, then on the union of the part solutions.
MaximizationResult distributed_greedy(const SetFunction& f, Element k,
                                      Element machines, std::uint64_t seed);

// Add and remove passes until neither improves f by more than
// (epsilon / n^2) |f(X)|; returns the better of X and its complement.
MaximizationResult local_search_usm(SetFunction& f, double epsilon = 1e-3);

// Deterministic two-sided greedy over the order `pi`.
MaximizationResult bidirectional_greedy(SetFunction& f,
                                        std::span<const Element> pi);

MaximizationResult randomized_greedy(SetFunction& f, Element k,
                                     std::uint64_t seed);

enum class OrderRule { kRandom, kGreedyOrder };

// Repeatedly maximizes a subgradient tight at the current set.
MaximizationResult minorize_maximize(SetFunction& f, const Constraint& c,
                                     OrderRule rule, std::uint64_t seed = 0,
                                     int max_iterations = 100);

// Exact maximizer of a modular function under `c`. Knapsack instances with
// more than 20 elements fall back to ratio greedy against the best
// singleton.
Subset maximize_modular(const ModularFunction& m, const Constraint& c);

}  // namespace submemo

#endif  // SUBMEMO_MAXIMIZE_HPP_
