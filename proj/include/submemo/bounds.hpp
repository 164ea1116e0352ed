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

// Modular bounds and the Lovasz extension. Every routine here drives the
// memo of the function it is given, so calls on one instance must not
// overlap. On return the memo state is unspecified.

#ifndef SUBMEMO_BOUNDS_HPP_
#define SUBMEMO_BOUNDS_HPP_

#include <span>
#include <vector>

#include "submemo/core.hpp"

namespace submemo {

using Permutation = std::vector<Element>;

// Throws InputError unless `order` lists every id in [0, n) exactly once.
void validate_permutation(std::span<const Element> order, Element n);

// Ids sorted by x descending, ties by ascending id.
Permutation sort_descending(const Eigen::VectorXd& x);

// h_sigma: weights[sigma(i)] = f(sigma(i) | {sigma(1..i-1)}), offset 0.
// One sweep: set_memo(empty), then gain_add + update per element.
ModularFunction extreme_point(SetFunction& f, std::span<const Element> sigma);

// h_Y: extreme point of the order that lists Y first. Members of Y, and then
// the remaining elements, follow `tie_order` (ascending ids when empty).
ModularFunction subgradient_at(SetFunction& f, const Subset& y,
                               std::span<const Element> tie_order = {});

// m1 at X: weights f(j | X - j) on X and f(j | empty) off X, offset
// f(X) - sum_{j in X} f(j | X - j).
ModularFunction supergradient_grow(SetFunction& f, const Subset& x);

// m2 at X: weights f(j | V - j) on X and f(j | X) off X.
ModularFunction supergradient_shrink(SetFunction& f, const Subset& x);

double lovasz_value(SetFunction& f, const Eigen::VectorXd& x);

// h_{sigma_x} with sigma_x = sort_descending(x); <h, x> = lovasz_value.
ModularFunction lovasz_subgradient(SetFunction& f, const Eigen::VectorXd& x);

}  // namespace submemo

#endif  // SUBMEMO_BOUNDS_HPP_
