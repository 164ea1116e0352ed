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

#include "submemo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace submemo {

void validate_permutation(std::span<const Element> order, Element n) {
  if (order.size() != static_cast<std::size_t>(n)) {
    throw InputError("permutation must list all " + std::to_string(n) +
                     " elements");
  }
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  for (Element j : order) {
    if (j < 0 || j >= n || seen[j]) {
      throw InputError("invalid permutation entry " + std::to_string(j));
    }
    seen[j] = 1;
  }
}

Permutation sort_descending(const Eigen::VectorXd& x) {
  Permutation order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Element a, Element b) { return x[a] > x[b]; });
  return order;
}

ModularFunction extreme_point(SetFunction& f, std::span<const Element> sigma) {
  validate_permutation(sigma, f.ground_size());
  ModularFunction h(f.ground_size());
  f.set_memo({});
  for (Element j : sigma) {
    h.weights[j] = f.gain_add(j);
    f.update(j);
  }
  return h;
}

ModularFunction subgradient_at(SetFunction& f, const Subset& y,
                               std::span<const Element> tie_order) {
  const Element n = f.ground_size();
  if (y.ground_size() != n) throw InputError("subset ground size mismatch");
  Permutation ties;
  if (tie_order.empty()) {
    ties.resize(static_cast<std::size_t>(n));
    std::iota(ties.begin(), ties.end(), 0);
    tie_order = ties;
  } else {
    validate_permutation(tie_order, n);
  }
  Permutation sigma;
  sigma.reserve(static_cast<std::size_t>(n));
  for (Element j : tie_order) {
    if (y.contains(j)) sigma.push_back(j);
  }
  for (Element j : tie_order) {
    if (!y.contains(j)) sigma.push_back(j);
  }
  return extreme_point(f, sigma);
}

ModularFunction supergradient_grow(SetFunction& f, const Subset& x) {
  const Element n = f.ground_size();
  if (x.ground_size() != n) throw InputError("subset ground size mismatch");
  ModularFunction m(n);
  f.set_memo({});
  for (Element j = 0; j < n; ++j) {
    if (!x.contains(j)) m.weights[j] = f.gain_add(j);
  }
  for (Element j : x) f.update(j);
  double inside = 0.0;
  for (Element j : x) {
    m.weights[j] = f.gain_remove(j);
    inside += m.weights[j];
  }
  m.offset = f.memo_value() - inside;
  return m;
}

ModularFunction supergradient_shrink(SetFunction& f, const Subset& x) {
  const Element n = f.ground_size();
  if (x.ground_size() != n) throw InputError("subset ground size mismatch");
  ModularFunction m(n);
  f.set_memo(x);
  for (Element j = 0; j < n; ++j) {
    if (!x.contains(j)) m.weights[j] = f.gain_add(j);
  }
  const double fx = f.memo_value();
  for (Element j = 0; j < n; ++j) {
    if (!x.contains(j)) f.update(j);
  }
  double inside = 0.0;
  for (Element j : x) {
    m.weights[j] = f.gain_remove(j);
    inside += m.weights[j];
  }
  m.offset = fx - inside;
  return m;
}

double lovasz_value(SetFunction& f, const Eigen::VectorXd& x) {
  return lovasz_subgradient(f, x).weights.dot(x);
}

ModularFunction lovasz_subgradient(SetFunction& f, const Eigen::VectorXd& x) {
  if (x.size() != f.ground_size()) {
    throw InputError("lovasz: vector length differs from ground size");
  }
  if (!x.allFinite()) throw InputError("lovasz: non-finite entry");
  return extreme_point(f, sort_descending(x));
}

}  // namespace submemo
