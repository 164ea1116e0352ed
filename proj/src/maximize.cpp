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

#include "submemo/maximize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>

#include "parallel.hpp"

namespace submemo {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Gains at or below this are treated as non-improving.
double gain_floor(double value) {
  return -kRelTol * std::max(1.0, std::abs(value));
}

std::vector<Element> all_ids(Element n) {
  std::vector<Element> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

void check_k(Element k, Element n) {
  if (k < 1 || k > n) {
    throw InputError("cardinality k=" + std::to_string(k) +
                     " must lie in [1, " + std::to_string(n) + "]");
  }
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InputError("epsilon must lie in (0, 1)");
  }
}

bool is_knapsack(const Constraint& c) {
  return c.kind == Constraint::Kind::kKnapsack;
}

double key_of(const Constraint& c, Element j, double gain) {
  return is_knapsack(c) ? gain / c.costs[j] : gain;
}

// Tracks the best feasible singleton seen on the first round of a knapsack
// greedy, for the final max(ratio greedy, best singleton) comparison.
struct BestSingleton {
  Element element = -1;
  double value = kNegInf;

  void offer(Element j, double gain) {
    if (gain > value || (gain == value && j < element)) {
      element = j;
      value = gain;
    }
  }
};

void finish_knapsack(SetFunction& f, const BestSingleton& single,
                     MaximizationResult& r) {
  if (single.element >= 0 && single.value > r.value) {
    f.set_memo({single.element});
    r.selected = f.memo();
    r.value = single.value;
    r.objective.push_back(r.value);
  }
}

MaximizationResult naive_impl(SetFunction& f, std::span<const Element> ids,
                              const Constraint& c) {
  const EvalCounters before = f.counters();
  MaximizationResult r;
  f.set_memo({});
  std::vector<Element> alive(ids.begin(), ids.end());
  std::sort(alive.begin(), alive.end());
  double spent = 0.0;
  auto fits = [&](Element j) {
    return !is_knapsack(c) || c.costs[j] <= c.budget - spent;
  };
  std::erase_if(alive, [&](Element j) { return !fits(j); });
  BestSingleton single;
  bool first_round = true;
  while (!alive.empty() &&
         (is_knapsack(c) || static_cast<Element>(f.memo().size()) < c.k)) {
    std::size_t best = 0;
    double best_key = kNegInf;
    double best_gain = kNegInf;
    for (std::size_t i = 0; i < alive.size(); ++i) {
      const double g = f.gain_add(alive[i]);
      if (first_round && is_knapsack(c)) single.offer(alive[i], g);
      const double key = key_of(c, alive[i], g);
      if (key > best_key) {
        best = i;
        best_key = key;
        best_gain = g;
      }
    }
    first_round = false;
    if (best_gain <= gain_floor(r.value)) break;
    const Element j = alive[best];
    r.trace.push_back({j, best_gain, static_cast<std::int64_t>(alive.size())});
    f.update(j);
    r.value += best_gain;
    r.objective.push_back(r.value);
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(best));
    if (is_knapsack(c)) {
      spent += c.costs[j];
      std::erase_if(alive, [&](Element l) { return !fits(l); });
    }
  }
  r.selected = f.memo();
  r.value = f.memo_value();
  if (is_knapsack(c)) finish_knapsack(f, single, r);
  r.counters = f.counters() - before;
  return r;
}

struct LazyEntry {
  double key;
  double gain;
  Element element;
  std::int64_t round;
};

// Max-heap on key; equal keys pop the smaller id first.
struct LazyOrder {
  bool operator()(const LazyEntry& a, const LazyEntry& b) const {
    if (a.key != b.key) return a.key < b.key;
    return a.element > b.element;
  }
};

MaximizationResult lazy_impl(SetFunction& f, std::span<const Element> ids,
                             const Constraint& c) {
  const EvalCounters before = f.counters();
  MaximizationResult r;
  f.set_memo({});
  std::priority_queue<LazyEntry, std::vector<LazyEntry>, LazyOrder> heap;
  BestSingleton single;
  std::int64_t recomputes = 0;
  for (Element j : ids) {
    if (is_knapsack(c) && c.costs[j] > c.budget) continue;
    const double g = f.gain_add(j);
    ++recomputes;
    if (is_knapsack(c)) single.offer(j, g);
    heap.push({key_of(c, j, g), g, j, 0});
  }
  double spent = 0.0;
  std::int64_t round = 0;
  while (!heap.empty() &&
         (is_knapsack(c) || static_cast<Element>(f.memo().size()) < c.k)) {
    LazyEntry top = heap.top();
    heap.pop();
    if (is_knapsack(c) && c.costs[top.element] > c.budget - spent) continue;
    if (top.round == round) {
      if (top.gain <= gain_floor(r.value)) break;
      r.trace.push_back({top.element, top.gain, recomputes});
      f.update(top.element);
      r.value += top.gain;
      r.objective.push_back(r.value);
      if (is_knapsack(c)) spent += c.costs[top.element];
      ++round;
      recomputes = 0;
      continue;
    }
    const double g = f.gain_add(top.element);
    ++recomputes;
    heap.push({key_of(c, top.element, g), g, top.element, round});
  }
  r.selected = f.memo();
  r.value = f.memo_value();
  if (is_knapsack(c)) finish_knapsack(f, single, r);
  r.counters = f.counters() - before;
  return r;
}

}  // namespace

Constraint Constraint::cardinality(Element k) {
  Constraint c;
  c.kind = Kind::kCardinality;
  c.k = k;
  return c;
}

Constraint Constraint::knapsack(Eigen::VectorXd costs, double budget) {
  Constraint c;
  c.kind = Kind::kKnapsack;
  c.costs = std::move(costs);
  c.budget = budget;
  return c;
}

void Constraint::validate(Element n) const {
  if (kind == Kind::kCardinality) {
    check_k(k, n);
    return;
  }
  if (costs.size() != n) throw InputError("knapsack: one cost per element");
  if (!costs.allFinite() || (costs.array() <= 0.0).any()) {
    throw InputError("knapsack: costs must be finite and positive");
  }
  if (!std::isfinite(budget) || budget <= 0.0) {
    throw InputError("knapsack: budget must be positive");
  }
  if (costs.minCoeff() > budget) {
    throw InputError("knapsack: no element fits the budget");
  }
}

double Constraint::cost(const Subset& x) const {
  if (kind == Kind::kCardinality) return static_cast<double>(x.size());
  double total = 0.0;
  for (Element j : x) total += costs[j];
  return total;
}

MaximizationResult greedy_naive(SetFunction& f, const Constraint& c) {
  c.validate(f.ground_size());
  return naive_impl(f, all_ids(f.ground_size()), c);
}

MaximizationResult greedy_lazy(SetFunction& f, const Constraint& c) {
  c.validate(f.ground_size());
  return lazy_impl(f, all_ids(f.ground_size()), c);
}

MaximizationResult greedy_stochastic(SetFunction& f, Element k,
                                     double epsilon, std::uint64_t seed) {
  const Element n = f.ground_size();
  check_k(k, n);
  check_epsilon(epsilon);
  const EvalCounters before = f.counters();
  MaximizationResult r;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  const double raw = std::ceil(static_cast<double>(n) / k *
                               std::log(1.0 / epsilon));
  const auto sample_size = static_cast<std::size_t>(std::max(1.0, raw));
  std::vector<Element> remaining = all_ids(n);
  f.set_memo({});
  for (Element step = 0; step < k && !remaining.empty(); ++step) {
    const std::size_t s = std::min(sample_size, remaining.size());
    if (s < remaining.size()) {
      for (std::size_t i = 0; i < s; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i,
                                                        remaining.size() - 1);
        std::swap(remaining[i], remaining[pick(rng)]);
      }
    }
    std::size_t best = 0;
    double best_gain = kNegInf;
    for (std::size_t i = 0; i < s; ++i) {
      const double g = f.gain_add(remaining[i]);
      if (g > best_gain ||
          (g == best_gain && remaining[i] < remaining[best])) {
        best = i;
        best_gain = g;
      }
    }
    if (best_gain <= gain_floor(r.value)) break;
    const Element j = remaining[best];
    r.trace.push_back({j, best_gain, static_cast<std::int64_t>(s)});
    f.update(j);
    r.value += best_gain;
    r.objective.push_back(r.value);
    remaining[best] = remaining.back();
    remaining.pop_back();
  }
  r.selected = f.memo();
  r.value = f.memo_value();
  r.counters = f.counters() - before;
  return r;
}

MaximizationResult sieve_streaming(const SetFunction& f,
                                   std::span<const Element> stream, Element k,
                                   double epsilon) {
  const Element n = f.ground_size();
  check_k(k, n);
  check_epsilon(epsilon);
  Subset seen(n);
  for (Element e : stream) {
    if (e < 0 || e >= n || seen.contains(e)) {
      throw InputError("stream must hold distinct in-range elements");
    }
    seen.insert(e);
  }

  struct Sieve {
    double threshold;
    std::unique_ptr<SetFunction> fn;
    double value = 0.0;
  };
  MaximizationResult r;
  r.selected = Subset(n);
  EvalCounters spent;
  std::map<int, Sieve> sieves;
  auto retire = [&](Sieve& s) {
    if (s.value > r.value) {
      r.selected = s.fn->memo();
      r.value = s.value;
    }
    spent += s.fn->counters();
  };

  auto probe = f.clone_detached();
  probe->set_memo({});
  const double base = std::log1p(epsilon);
  double m = 0.0;
  for (Element e : stream) {
    const double single = probe->gain_add(e);
    if (single > m) {
      m = single;
      auto lo = static_cast<int>(std::ceil(std::log(m) / base));
      while (std::exp(lo * base) < m) ++lo;
      while (std::exp((lo - 1) * base) >= m) --lo;
      const double top = 2.0 * k * m;
      for (auto it = sieves.begin(); it != sieves.end() && it->first < lo;) {
        retire(it->second);
        it = sieves.erase(it);
      }
      for (int i = lo; std::exp(i * base) <= top; ++i) {
        if (sieves.count(i)) continue;
        Sieve s{std::exp(i * base), f.clone_detached()};
        s.fn->set_memo({});
        sieves.emplace(i, std::move(s));
      }
    }
    for (auto& [index, s] : sieves) {
      const auto size = static_cast<Element>(s.fn->memo().size());
      if (size >= k) continue;
      const double g = s.fn->gain_add(e);
      if (g >= (s.threshold / 2.0 - s.value) / (k - size)) {
        s.fn->update(e);
        s.value += g;
      }
    }
  }
  for (auto& [index, s] : sieves) {
    if (s.fn->memo_value() > r.value) {
      r.selected = s.fn->memo();
      r.value = s.fn->memo_value();
    }
    spent += s.fn->counters();
  }
  spent += probe->counters();
  r.counters = spent;
  for (Element j : r.selected) r.trace.push_back({j, 0.0, 0});
  r.objective.push_back(r.value);
  return r;
}

MaximizationResult distributed_greedy(const SetFunction& f, Element k,
                                      Element machines, std::uint64_t seed) {
  const Element n = f.ground_size();
  check_k(k, n);
  if (machines < 1 || machines > n) {
    throw InputError("machine count must lie in [1, n]");
  }
  std::vector<Element> perm = all_ids(n);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  const auto m = static_cast<std::size_t>(machines);
  std::vector<std::vector<Element>> parts(m);
  for (std::size_t p = 0; p < m; ++p) {
    const std::size_t lo = p * perm.size() / m;
    const std::size_t hi = (p + 1) * perm.size() / m;
    parts[p].assign(perm.begin() + lo, perm.begin() + hi);
    std::sort(parts[p].begin(), parts[p].end());
  }
  const Constraint card = Constraint::cardinality(k);
  std::vector<MaximizationResult> local(m);
  detail::parallel_for(m, detail::worker_count(), [&](std::size_t p) {
    auto clone = f.clone_detached();
    local[p] = lazy_impl(*clone, parts[p], card);
  });

  std::vector<Element> merged;
  EvalCounters spent;
  std::size_t best_part = 0;
  for (std::size_t p = 0; p < m; ++p) {
    merged.insert(merged.end(), local[p].selected.begin(),
                  local[p].selected.end());
    spent += local[p].counters;
    if (local[p].value > local[best_part].value) best_part = p;
  }
  std::sort(merged.begin(), merged.end());
  auto clone = f.clone_detached();
  MaximizationResult second = lazy_impl(*clone, merged, card);
  spent += second.counters;

  MaximizationResult r = second.value >= local[best_part].value
                             ? std::move(second)
                             : std::move(local[best_part]);
  r.counters = spent;
  r.seed = seed;
  return r;
}

MaximizationResult local_search_usm(SetFunction& f, double epsilon) {
  const Element n = f.ground_size();
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  const EvalCounters before = f.counters();
  MaximizationResult r;
  const double scale = epsilon / (static_cast<double>(n) * n);
  auto threshold = [&](double v) {
    return std::max(scale * std::abs(v), kRelTol * std::max(1.0, std::abs(v)));
  };
  f.set_memo({});
  double value = 0.0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Element j = 0; j < n; ++j) {
      if (f.memo().contains(j)) continue;
      const double g = f.gain_add(j);
      if (g > threshold(value)) {
        f.update(j);
        value += g;
        r.trace.push_back({j, g, 1});
        r.objective.push_back(value);
        changed = true;
      }
    }
    for (Element j : f.memo().sorted()) {
      const double g = f.gain_remove(j);
      if (-g > threshold(value)) {
        f.downdate(j);
        value -= g;
        r.trace.push_back({j, -g, 1});
        r.objective.push_back(value);
        changed = true;
      }
    }
  }
  r.selected = f.memo();
  r.value = f.memo_value();
  auto other = f.clone_detached();
  other->set_memo(r.selected.complement());
  const double complement_value = other->memo_value();
  if (complement_value > r.value) {
    r.selected = other->memo();
    r.value = complement_value;
    r.objective.push_back(r.value);
  }
  r.counters = f.counters() - before + other->counters();
  return r;
}

MaximizationResult bidirectional_greedy(SetFunction& f,
                                        std::span<const Element> pi) {
  const Element n = f.ground_size();
  validate_permutation(pi, n);
  const EvalCounters before = f.counters();
  MaximizationResult r;
  f.set_memo({});
  auto shrink = f.clone_detached();
  shrink->set_memo(Subset::full(n));
  for (Element e : pi) {
    const double a = f.gain_add(e);
    const double b = -shrink->gain_remove(e);
    if (a >= b) {
      f.update(e);
      r.trace.push_back({e, a, 2});
    } else {
      shrink->downdate(e);
      r.trace.push_back({e, b, 2});
    }
  }
  r.selected = f.memo();
  r.value = f.memo_value();
  r.objective.push_back(r.value);
  r.counters = f.counters() - before + shrink->counters();
  return r;
}

MaximizationResult randomized_greedy(SetFunction& f, Element k,
                                     std::uint64_t seed) {
  const Element n = f.ground_size();
  check_k(k, n);
  const EvalCounters before = f.counters();
  MaximizationResult r;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Element> pick(0, k - 1);
  f.set_memo({});
  std::vector<std::pair<double, Element>> scored;
  for (Element round = 0; round < k; ++round) {
    scored.clear();
    for (Element j = 0; j < n; ++j) {
      if (!f.memo().contains(j)) scored.emplace_back(f.gain_add(j), j);
    }
    const auto evaluated = static_cast<std::int64_t>(scored.size());
    // Zero-gain dummies carry ids n..n+k-1 so real elements win ties.
    for (Element d = 0; d < k; ++d) scored.emplace_back(0.0, n + d);
    std::partial_sort(scored.begin(), scored.begin() + k, scored.end(),
                      [](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first > b.first;
                        return a.second < b.second;
                      });
    const auto [gain, j] = scored[static_cast<std::size_t>(pick(rng))];
    if (j >= n) continue;
    f.update(j);
    r.trace.push_back({j, gain, evaluated});
    r.objective.push_back(f.memo_value());
  }
  r.selected = f.memo();
  r.value = f.memo_value();
  r.counters = f.counters() - before;
  return r;
}

Subset maximize_modular(const ModularFunction& m, const Constraint& c) {
  const Element n = m.ground_size();
  c.validate(n);
  std::vector<Element> positive;
  for (Element j = 0; j < n; ++j) {
    if (m.weights[j] > 0.0) positive.push_back(j);
  }
  std::stable_sort(positive.begin(), positive.end(), [&](Element a, Element b) {
    return m.weights[a] > m.weights[b];
  });
  Subset out(n);
  if (c.kind == Constraint::Kind::kCardinality) {
    for (Element j : positive) {
      if (static_cast<Element>(out.size()) == c.k) break;
      out.insert(j);
    }
    return out;
  }
  std::erase_if(positive, [&](Element j) { return c.costs[j] > c.budget; });
  const std::size_t p = positive.size();
  if (p <= 20) {
    std::uint32_t best_mask = 0;
    double best = 0.0;
    for (std::uint32_t mask = 1; mask < (1u << p); ++mask) {
      double w = 0.0;
      double cost = 0.0;
      for (std::size_t i = 0; i < p; ++i) {
        if (mask & (1u << i)) {
          w += m.weights[positive[i]];
          cost += c.costs[positive[i]];
        }
      }
      if (cost <= c.budget && w > best) {
        best = w;
        best_mask = mask;
      }
    }
    for (std::size_t i = 0; i < p; ++i) {
      if (best_mask & (1u << i)) out.insert(positive[i]);
    }
    return out;
  }
  std::vector<Element> by_ratio = positive;
  std::stable_sort(by_ratio.begin(), by_ratio.end(), [&](Element a, Element b) {
    return m.weights[a] / c.costs[a] > m.weights[b] / c.costs[b];
  });
  double spent = 0.0;
  double total = 0.0;
  for (Element j : by_ratio) {
    if (spent + c.costs[j] <= c.budget) {
      out.insert(j);
      spent += c.costs[j];
      total += m.weights[j];
    }
  }
  if (!positive.empty() && m.weights[positive.front()] > total) {
    out = Subset(n, {positive.front()});
  }
  return out;
}

MaximizationResult minorize_maximize(SetFunction& f, const Constraint& c,
                                     OrderRule rule, std::uint64_t seed,
                                     int max_iterations) {
  const Element n = f.ground_size();
  c.validate(n);
  const EvalCounters before = f.counters();
  MaximizationResult r;
  if (rule == OrderRule::kRandom) r.seed = seed;
  std::mt19937_64 rng(seed);
  Subset x(n);
  double value = 0.0;
  Eigen::VectorXd previous;
  for (int it = 0; it < max_iterations; ++it) {
    Permutation sigma(x.begin(), x.end());
    std::vector<Element> rest;
    for (Element j = 0; j < n; ++j) {
      if (!x.contains(j)) rest.push_back(j);
    }
    if (rule == OrderRule::kRandom) {
      std::shuffle(sigma.begin(), sigma.end(), rng);
      std::shuffle(rest.begin(), rest.end(), rng);
    } else if (previous.size() == n) {
      std::stable_sort(rest.begin(), rest.end(), [&](Element a, Element b) {
        return previous[a] > previous[b];
      });
    }
    sigma.insert(sigma.end(), rest.begin(), rest.end());
    const ModularFunction h = extreme_point(f, sigma);
    Subset y = maximize_modular(h, c);
    r.trace.push_back({-1, 0.0, n});
    if (y == x || h(y) <= h(x)) break;
    f.set_memo(y);
    const double next = f.memo_value();
    if (next < value) break;
    const bool small = next - value < kRelTol * std::max(1.0, std::abs(value));
    r.trace.back().gain = next - value;
    x = std::move(y);
    value = next;
    r.objective.push_back(value);
    previous = h.weights;
    if (small) break;
  }
  r.selected = x;
  r.value = value;
  r.counters = f.counters() - before;
  return r;
}

}  // namespace submemo
