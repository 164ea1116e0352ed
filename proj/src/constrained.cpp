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

#include "submemo/constrained.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "submemo/bounds.hpp"
#include "submemo/functions.hpp"
#include "submemo/maximize.hpp"
#include "submemo/minimize.hpp"

namespace submemo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tol_at(double v) { return kRelTol * std::max(1.0, std::abs(v)); }

double value_at(SetFunction& f, const Subset& x) {
  f.set_memo(x);
  return f.memo_value();
}

void check_pair(const SetFunction& f, const SetFunction& g) {
  if (f.ground_size() != g.ground_size()) {
    throw InputError("f and g must share the ground set");
  }
}

// Lazy greedy entry. Free elements (non-positive cost) rank above all
// others and are ordered by gain; the rest by gain / cost.
struct RatioEntry {
  int free;
  double key;
  double gain;
  Element element;
  std::int64_t round;
};

struct RatioOrder {
  bool operator()(const RatioEntry& a, const RatioEntry& b) const {
    if (a.free != b.free) return a.free < b.free;
    if (a.key != b.key) return a.key < b.key;
    return a.element > b.element;
  }
};

RatioEntry make_entry(double cost, double gain, Element j, std::int64_t round) {
  const bool free = cost <= 0.0;
  return {free ? 1 : 0, free ? gain : gain / cost, gain, j, round};
}

// Knapsack step for SCSK: max g(Y) s.t. offset + sum_{Y} w <= b. Elements
// with w <= 0 are always taken; the rest go through lazy ratio greedy,
// compared against the best single addition. Returns `fallback` when even
// the free elements break the budget.
Subset knapsack_surrogate(SetFunction& g, const ModularFunction& m, double b,
                          const Subset& fallback) {
  const Element n = g.ground_size();
  Subset base(n);
  double spent = m.offset;
  for (Element j = 0; j < n; ++j) {
    if (m.weights[j] <= 0.0) {
      base.insert(j);
      spent += m.weights[j];
    }
  }
  if (spent > b + tol_at(b)) return fallback;
  g.set_memo(base);
  const double base_value = g.memo_value();
  double value = base_value;
  std::priority_queue<RatioEntry, std::vector<RatioEntry>, RatioOrder> heap;
  Element best_single = -1;
  double best_single_gain = 0.0;
  for (Element j = 0; j < n; ++j) {
    if (base.contains(j) || spent + m.weights[j] > b) continue;
    const double gain = g.gain_add(j);
    if (gain > best_single_gain) {
      best_single = j;
      best_single_gain = gain;
    }
    heap.push(make_entry(m.weights[j], gain, j, 0));
  }
  std::int64_t round = 0;
  while (!heap.empty()) {
    RatioEntry top = heap.top();
    heap.pop();
    if (spent + m.weights[top.element] > b) continue;
    if (top.round == round) {
      if (top.gain <= tol_at(value)) break;
      g.update(top.element);
      value += top.gain;
      spent += m.weights[top.element];
      ++round;
      continue;
    }
    heap.push(make_entry(m.weights[top.element], g.gain_add(top.element),
                         top.element, round));
  }
  if (best_single >= 0 && base_value + best_single_gain > value) {
    Subset single = base;
    single.insert(best_single);
    return single;
  }
  return g.memo();
}

std::vector<Element> sorted_key(const Subset& s) { return s.sorted(); }

}  // namespace

Subset submodular_set_cover(SetFunction& g, const ModularFunction& cost,
                            double c) {
  const Element n = g.ground_size();
  if (cost.ground_size() != n) {
    throw InputError("set cover: cost length differs from ground size");
  }
  if (!std::isfinite(c)) throw InputError("set cover: bound must be finite");
  const double slack = tol_at(c);
  if (value_at(g, Subset::full(n)) < c - slack) {
    throw InputError("set cover: bound exceeds g(V)");
  }
  g.set_memo({});
  double value = 0.0;
  if (value >= c - slack) return g.memo();
  const double tiny = kAbsTol * std::max(1.0, std::abs(c));
  std::priority_queue<RatioEntry, std::vector<RatioEntry>, RatioOrder> heap;
  for (Element j = 0; j < n; ++j) {
    const double gain = g.gain_add(j);
    if (gain > tiny) heap.push(make_entry(cost.weights[j], gain, j, 0));
  }
  std::int64_t round = 0;
  while (value < c - slack && !heap.empty()) {
    RatioEntry top = heap.top();
    heap.pop();
    if (top.round == round) {
      g.update(top.element);
      value += top.gain;
      ++round;
      continue;
    }
    const double gain = g.gain_add(top.element);
    if (gain > tiny) {
      heap.push(make_entry(cost.weights[top.element], gain, top.element,
                           round));
    }
  }
  return g.memo();
}

IterativeResult scsc_solve(SetFunction& f, SetFunction& g, double c,
                           int max_iterations) {
  check_pair(f, g);
  const Element n = f.ground_size();
  const EvalCounters before = f.counters() + g.counters();
  IterativeResult r;
  r.set = Subset(n);
  r.objective = kInf;
  Subset x(n);
  r.hit_iteration_cap = true;
  for (int it = 0; it < max_iterations; ++it) {
    const Subset y1 = submodular_set_cover(g, supergradient_grow(f, x), c);
    const Subset y2 = submodular_set_cover(g, supergradient_shrink(f, x), c);
    const double v1 = value_at(f, y1);
    const double v2 = value_at(f, y2);
    const Subset& y = v2 < v1 ? y2 : y1;
    const double v = std::min(v1, v2);
    ++r.iterations;
    if (v < r.objective) {
      r.objective = v;
      r.set = y;
    }
    r.trace.push_back(r.objective);
    if (y == x) {
      r.hit_iteration_cap = false;
      break;
    }
    x = y;
  }
  r.counters = f.counters() + g.counters() - before;
  return r;
}

IterativeResult scsk_solve(SetFunction& f, SetFunction& g, double b,
                           int max_iterations) {
  check_pair(f, g);
  if (!std::isfinite(b) || b < 0.0) {
    throw InputError("knapsack bound must be finite and non-negative");
  }
  const Element n = f.ground_size();
  const EvalCounters before = f.counters() + g.counters();
  IterativeResult r;
  r.set = Subset(n);
  r.objective = 0.0;
  Subset x(n);
  r.hit_iteration_cap = true;
  for (int it = 0; it < max_iterations; ++it) {
    const ModularFunction m1 = supergradient_grow(f, x);
    const ModularFunction m2 = supergradient_shrink(f, x);
    ++r.iterations;
    Subset y = x;
    double best = value_at(g, x);
    for (const ModularFunction* m : {&m1, &m2}) {
      Subset cand = knapsack_surrogate(g, *m, b, x);
      const double v = value_at(g, cand);
      // m >= f, so m(cand) <= b already implies feasibility; the check
      // guards against rounding only.
      if (v > best + tol_at(best) && value_at(f, cand) <= b + tol_at(b)) {
        y = std::move(cand);
        best = v;
      }
    }
    if (best > r.objective) {
      r.objective = best;
      r.set = y;
    }
    r.trace.push_back(r.objective);
    if (y == x) {
      r.hit_iteration_cap = false;
      break;
    }
    x = std::move(y);
  }
  r.counters = f.counters() + g.counters() - before;
  return r;
}

IterativeResult ds_minimize(SetFunction& f, SetFunction& g, DsVariant variant,
                            std::uint64_t seed, int max_iterations) {
  check_pair(f, g);
  const Element n = f.ground_size();
  const EvalCounters before = f.counters() + g.counters();
  EvalCounters inner;
  Permutation ties(static_cast<std::size_t>(n));
  std::iota(ties.begin(), ties.end(), 0);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(ties.begin(), ties.end(), rng);
  }
  auto objective = [&](const Subset& y) {
    return value_at(f, y) - value_at(g, y);
  };
  auto with_modular = [](const SetFunction& base, Eigen::VectorXd weights) {
    std::vector<MixtureComponent> parts;
    parts.push_back({1.0, base.clone_detached()});
    parts.push_back({1.0, make_modular(std::move(weights))});
    return make_mixture(std::move(parts));
  };

  IterativeResult r;
  r.set = Subset(n);
  r.objective = 0.0;
  r.hit_iteration_cap = true;
  Subset x(n);
  double current = 0.0;
  std::set<std::vector<Element>> visited{sorted_key(x)};
  for (int it = 0; it < max_iterations; ++it) {
    std::vector<Subset> candidates;
    switch (variant) {
      case DsVariant::kSubSup: {
        const ModularFunction h = subgradient_at(g, x, ties);
        auto surrogate = with_modular(f, -h.weights);
        MinimizationResult mn = min_norm_point(*surrogate);
        inner += mn.counters;
        candidates.push_back(std::move(mn.minimizer_min));
        candidates.push_back(std::move(mn.minimizer_max));
        break;
      }
      case DsVariant::kSupSub: {
        for (const ModularFunction& m :
             {supergradient_grow(f, x), supergradient_shrink(f, x)}) {
          auto surrogate = with_modular(g, -m.weights);
          MaximizationResult ls = local_search_usm(*surrogate);
          inner += ls.counters;
          candidates.push_back(std::move(ls.selected));
        }
        break;
      }
      case DsVariant::kModMod: {
        const ModularFunction h = subgradient_at(g, x, ties);
        for (const ModularFunction& m :
             {supergradient_grow(f, x), supergradient_shrink(f, x)}) {
          Subset y(n);
          for (Element j = 0; j < n; ++j) {
            if (m.weights[j] - h.weights[j] < 0.0) y.insert(j);
          }
          candidates.push_back(std::move(y));
        }
        break;
      }
    }
    ++r.iterations;
    std::size_t pick = 0;
    double v = kInf;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double ov = objective(candidates[i]);
      if (ov < v) {
        v = ov;
        pick = i;
      }
    }
    if (v < r.objective) {
      r.objective = v;
      r.set = candidates[pick];
    }
    r.trace.push_back(r.objective);
    if (v > current + tol_at(current) ||
        !visited.insert(sorted_key(candidates[pick])).second) {
      r.hit_iteration_cap = false;
      break;
    }
    x = std::move(candidates[pick]);
    current = v;
  }
  r.counters = f.counters() + g.counters() - before + inner;
  return r;
}

}  // namespace submemo
