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

#include <algorithm>
#include <bit>
#include <cmath>

#include "submemo/bench.hpp"

namespace submemo {
namespace {

// Visits all 2^n sets in Gray-code order, one update or downdate per step,
// and keeps the best under `better`. Ties within a relative 1e-10 go to the
// lexicographically smaller sorted member list.
template <typename Feasible, typename Better>
BruteForceResult enumerate(SetFunction& f, Feasible feasible, Better better) {
  const Element n = f.ground_size();
  if (n > kBruteForceCap) {
    throw InputError("brute force limited to n <= " +
                     std::to_string(kBruteForceCap));
  }
  f.set_memo({});
  std::vector<Element> best;
  double best_value = 0.0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto j = static_cast<Element>(std::countr_zero(i));
    if (f.memo().contains(j)) {
      f.downdate(j);
    } else {
      f.update(j);
    }
    if (!feasible(f.memo())) continue;
    const double v = f.memo_value();
    const double tie = 1e-10 * std::max(1.0, std::abs(best_value));
    if (better(v, best_value) && std::abs(v - best_value) > tie) {
      best = f.memo().sorted();
      best_value = v;
    } else if (std::abs(v - best_value) <= tie) {
      std::vector<Element> cand = f.memo().sorted();
      if (std::lexicographical_compare(cand.begin(), cand.end(), best.begin(),
                                       best.end())) {
        best = std::move(cand);
        best_value = v;
      }
    }
  }
  BruteForceResult r;
  r.set = Subset(n, best);
  f.set_memo(r.set);
  r.value = f.memo_value();
  return r;
}

}  // namespace

BruteForceResult brute_force_max(SetFunction& f, const Constraint& c) {
  if (f.ground_size() > kBruteForceCap) {
    throw InputError("brute force limited to n <= " +
                     std::to_string(kBruteForceCap));
  }
  c.validate(f.ground_size());
  return enumerate(
      f,
      [&](const Subset& x) {
        if (c.kind == Constraint::Kind::kCardinality) {
          return static_cast<Element>(x.size()) <= c.k;
        }
        return c.cost(x) <= c.budget;
      },
      [](double v, double best) { return v > best; });
}

BruteForceResult brute_force_min(SetFunction& f) {
  return enumerate(
      f, [](const Subset&) { return true; },
      [](double v, double best) { return v < best; });
}

}  // namespace submemo
