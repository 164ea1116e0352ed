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

#include "submemo/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/QR>

namespace submemo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Walks `order` from the empty set and returns the values of all n + 1
// prefixes.
std::vector<double> prefix_values(SetFunction& f,
                                  std::span<const Element> order) {
  std::vector<double> values;
  values.reserve(order.size() + 1);
  values.push_back(0.0);
  f.set_memo({});
  double v = 0.0;
  for (Element j : order) {
    v += f.gain_add(j);
    f.update(j);
    values.push_back(v);
  }
  return values;
}

struct PrefixChoice {
  double value = kInf;
  std::size_t first = 0;  // smallest optimal prefix length
  std::size_t last = 0;   // largest optimal prefix length
};

PrefixChoice best_prefix(const std::vector<double>& values) {
  PrefixChoice c;
  for (double v : values) c.value = std::min(c.value, v);
  const double tol = kRelTol * std::max(1.0, std::abs(c.value));
  bool found = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= c.value + tol) {
      if (!found) c.first = i;
      c.last = i;
      found = true;
    }
  }
  return c;
}

Subset prefix_set(Element n, std::span<const Element> order, std::size_t len) {
  return Subset(n, order.first(len));
}

Permutation sort_ascending(const Eigen::VectorXd& x) {
  Permutation order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Element a, Element b) { return x[a] < x[b]; });
  return order;
}

// Minimizer of |S a| over the affine hull of the columns of S.
Eigen::VectorXd affine_minimizer(const Eigen::MatrixXd& s) {
  const Eigen::Index k = s.cols();
  Eigen::MatrixXd a(k + 1, k + 1);
  a.topLeftCorner(k, k) = s.transpose() * s;
  a.topRightCorner(k, 1).setOnes();
  a.bottomLeftCorner(1, k).setOnes();
  a(k, k) = 0.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs[k] = 1.0;
  Eigen::VectorXd sol = a.completeOrthogonalDecomposition().solve(rhs);
  Eigen::VectorXd alpha = sol.head(k);
  // Re-normalize against drift from a near-singular system.
  const double total = alpha.sum();
  if (std::abs(total) > 0.0) alpha /= total;
  return alpha;
}

void drop_columns(Eigen::MatrixXd& s, Eigen::VectorXd& lambda, double floor) {
  Eigen::Index keep = 0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] > floor) {
      s.col(keep) = s.col(i);
      lambda[keep] = lambda[i];
      ++keep;
    }
  }
  s.conservativeResize(Eigen::NoChange, keep);
  lambda.conservativeResize(keep);
  lambda /= lambda.sum();
}

void check_family(const Family& family, Element n) {
  if (const auto* card = std::get_if<AtLeastK>(&family)) {
    if (card->k < 0 || card->k > n) {
      throw InputError("family: k must lie in [0, n]");
    }
    return;
  }
  const auto& sets = std::get<SetFamily>(family).sets;
  if (sets.empty()) throw InputError("family: no feasible sets");
  for (const auto& s : sets) {
    if (s.ground_size() != n) throw InputError("family: ground size mismatch");
  }
}

}  // namespace

ModularFunction linear_oracle(SetFunction& f,
                              const Eigen::VectorXd& direction) {
  if (direction.size() != f.ground_size()) {
    throw InputError("linear oracle: direction length differs from n");
  }
  if (!direction.allFinite()) throw InputError("linear oracle: non-finite");
  return extreme_point(f, sort_descending(direction));
}

MinimizationResult min_norm_point(SetFunction& f,
                                  const MinNormOptions& options) {
  const Element n = f.ground_size();
  const EvalCounters before = f.counters();
  const int cap = options.max_iterations > 0 ? options.max_iterations
                                             : 50 * (n + 1) + 1000;

  Eigen::MatrixXd s(n, 1);
  s.col(0) = linear_oracle(f, Eigen::VectorXd::Zero(n)).weights;
  const double f_v = s.col(0).sum();
  const double tol =
      options.tolerance.value_or(1e-10 * std::max(1.0, std::abs(f_v)));
  Eigen::VectorXd lambda = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd x = s.col(0);

  MinimizationResult r;
  double gap = kInf;
  int stalls = 0;
  int it = 0;
  for (; it < cap; ++it) {
    const Eigen::VectorXd q = linear_oracle(f, -x).weights;
    const double norm = x.norm();
    gap = x.squaredNorm() - x.dot(q);
    r.objective.push_back(norm);
    if (gap <= tol * std::max(1.0, norm)) break;

    s.conservativeResize(Eigen::NoChange, s.cols() + 1);
    s.col(s.cols() - 1) = q;
    lambda.conservativeResize(lambda.size() + 1);
    lambda[lambda.size() - 1] = 0.0;

    // Minor cycles: move toward the affine minimizer, dropping points whose
    // coefficient would turn negative.
    for (Eigen::Index minor = 0; minor <= s.cols(); ++minor) {
      const Eigen::VectorXd alpha = affine_minimizer(s);
      if (alpha.minCoeff() > 1e-12) {
        lambda = alpha;
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (alpha[i] <= 1e-12 && lambda[i] - alpha[i] > 0.0) {
          theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
        }
      }
      lambda = theta * alpha + (1.0 - theta) * lambda;
      drop_columns(s, lambda, 1e-14);
    }
    const Eigen::VectorXd next = s * lambda;
    if (next.norm() >= norm * (1.0 - 1e-15)) {
      if (++stalls > 5) {
        x = next;
        break;
      }
    } else {
      stalls = 0;
    }
    x = next;
  }
  if (it >= cap) {
    throw MinNormConvergenceError(
        "min-norm point: no convergence within " + std::to_string(cap) +
            " iterations",
        x, gap);
  }

  const Permutation order = sort_ascending(x);
  const auto values = prefix_values(f, order);
  const PrefixChoice best = best_prefix(values);
  r.minimizer_min = prefix_set(n, order, best.first);
  r.minimizer_max = prefix_set(n, order, best.last);
  r.value = values[best.first];
  r.iterations = it + 1;
  r.gap = gap;
  r.point = std::move(x);
  r.counters = f.counters() - before;
  return r;
}

MinimizationResult lovasz_subgradient_min(SetFunction& f,
                                          const LovaszOptions& options) {
  const Element n = f.ground_size();
  if (options.iterations < 1) throw InputError("lovasz: iterations >= 1");
  if (!(options.step_scale > 0.0)) throw InputError("lovasz: step_scale > 0");
  const EvalCounters before = f.counters();
  MinimizationResult r;
  r.minimizer_min = Subset(n);
  r.minimizer_max = Subset(n);
  r.value = 0.0;
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 0.5);
  const double radius = std::sqrt(static_cast<double>(n));

  auto visit = [&](const Eigen::VectorXd& point) {
    const Permutation order = sort_descending(point);
    const auto values = prefix_values(f, order);
    const PrefixChoice c = best_prefix(values);
    if (c.value < r.value - kRelTol * std::max(1.0, std::abs(r.value))) {
      r.value = values[c.first];
      r.minimizer_min = prefix_set(n, order, c.first);
      r.minimizer_max = prefix_set(n, order, c.last);
    }
    Eigen::VectorXd g(n);
    for (std::size_t i = 0; i < order.size(); ++i) {
      g[order[i]] = values[i + 1] - values[i];
    }
    return g;
  };

  int t = 1;
  for (; t <= options.iterations; ++t) {
    const Eigen::VectorXd g = visit(x);
    r.objective.push_back(r.value);
    const double norm = g.norm();
    if (norm == 0.0) break;
    const double step =
        options.step_scale * radius / (norm * std::sqrt(static_cast<double>(t)));
    x = (x - step * g).cwiseMax(0.0).cwiseMin(1.0);
  }
  visit(x);
  r.objective.push_back(r.value);
  r.iterations = std::min(t, options.iterations);
  r.point = std::move(x);
  r.counters = f.counters() - before;
  return r;
}

Subset minimize_modular(const ModularFunction& m, const Family& family) {
  const Element n = m.ground_size();
  check_family(family, n);
  if (const auto* card = std::get_if<AtLeastK>(&family)) {
    Permutation order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
      return m.weights[a] < m.weights[b];
    });
    Subset out(n);
    for (Element j : order) {
      if (m.weights[j] >= 0.0 && static_cast<Element>(out.size()) >= card->k) {
        break;
      }
      out.insert(j);
    }
    return out;
  }
  const auto& sets = std::get<SetFamily>(family).sets;
  std::size_t best = 0;
  double best_value = kInf;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const double v = m(sets[i]);
    if (v < best_value) {
      best = i;
      best_value = v;
    }
  }
  return sets[best];
}

MinimizationResult mmin_constrained(SetFunction& f, const Family& family,
                                    int max_iterations) {
  const Element n = f.ground_size();
  check_family(family, n);
  const EvalCounters before = f.counters();
  MinimizationResult r;
  Subset x(n);
  double value = kInf;
  auto value_of = [&](const Subset& y) {
    f.set_memo(y);
    return f.memo_value();
  };
  int it = 0;
  for (; it < max_iterations; ++it) {
    const Subset y1 = minimize_modular(supergradient_grow(f, x), family);
    const Subset y2 = minimize_modular(supergradient_shrink(f, x), family);
    const double v1 = value_of(y1);
    const double v2 = value_of(y2);
    const bool second = v2 < v1;
    const Subset& y = second ? y2 : y1;
    const double v = second ? v2 : v1;
    if (y == x) {
      if (value == kInf) {
        value = v;
        r.objective.push_back(value);
      }
      break;
    }
    if (v > value) break;
    x = y;
    value = v;
    r.objective.push_back(value);
  }
  r.minimizer_min = x;
  r.minimizer_max = x;
  r.value = value;
  r.iterations = it + 1;
  r.counters = f.counters() - before;
  return r;
}

}  // namespace submemo
