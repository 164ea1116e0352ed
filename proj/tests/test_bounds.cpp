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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "submemo/bounds.hpp"

namespace submemo {
namespace {

using testing::small_facility;
using testing::small_instance;

Permutation identity(Element n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// Hand telescoping from the from-scratch values along sigma.
Eigen::VectorXd telescoped(SetFunction& f, const Permutation& sigma) {
  Eigen::VectorXd w(f.ground_size());
  std::vector<Element> prefix;
  double prev = 0.0;
  for (Element j : sigma) {
    prefix.push_back(j);
    const double v = f.evaluate(std::span<const Element>(prefix));
    w[j] = v - prev;
    prev = v;
  }
  return w;
}

TEST(ExtremePoint, FacilityLocationExample) {
  auto f = small_facility();
  const ModularFunction h = extreme_point(*f, identity(3));
  // f({0}) = 1.7, f({0,1}) = 2.3, f(V) = 3.
  EXPECT_NEAR(h.weights[0], 1.7, 1e-12);
  EXPECT_NEAR(h.weights[1], 0.6, 1e-12);
  EXPECT_NEAR(h.weights[2], 0.7, 1e-12);
  EXPECT_EQ(h.offset, 0.0);
}

TEST(ExtremePoint, CountsOneSweep) {
  auto f = small_instance("faclocation", 25, 2);
  f->reset_counters();
  extreme_point(*f, identity(25));
  EXPECT_EQ(f->counters().gain_evals, 25);
  EXPECT_EQ(f->counters().memo_updates, 25);
  EXPECT_EQ(f->counters().oracle_evals, 0);
}

TEST(ExtremePoint, ModularIsItsWeights) {
  auto f = testing::modular({0.5, -1.0, 2.0, 0.0});
  std::mt19937_64 rng(1);
  Permutation p = identity(4);
  for (int rep = 0; rep < 10; ++rep) {
    std::shuffle(p.begin(), p.end(), rng);
    EXPECT_EQ(extreme_point(*f, p).weights,
              Eigen::Vector4d(0.5, -1.0, 2.0, 0.0));
  }
}

TEST(ExtremePoint, MatchesTelescopingAndSumsToFullValue) {
  std::mt19937_64 rng(2);
  for (const auto& kind : testing::all_kinds()) {
    auto f = small_instance(kind, 10, 7);
    Permutation p = identity(10);
    std::shuffle(p.begin(), p.end(), rng);
    const ModularFunction h = extreme_point(*f, p);
    const Eigen::VectorXd oracle = telescoped(*f, p);
    const double tol = kind == "logdet" ? 1e-7 : 1e-9;
    for (Element j = 0; j < 10; ++j) {
      EXPECT_LE(testing::rel_err(h.weights[j], oracle[j]), tol) << kind;
    }
    EXPECT_LE(testing::rel_err(h.weights.sum(), f->evaluate(Subset::full(10))),
              tol)
        << kind;
  }
}

TEST(ExtremePoint, RejectsBadPermutation) {
  auto f = small_facility();
  const Permutation dup = {0, 0, 1};
  const Permutation short_one = {0, 1};
  EXPECT_THROW(extreme_point(*f, dup), InputError);
  EXPECT_THROW(extreme_point(*f, short_one), InputError);
}

TEST(SortDescending, TiesByAscendingId) {
  const Permutation p = sort_descending(Eigen::Vector4d(0.5, 1.0, 0.5, 1.0));
  EXPECT_EQ(p, (Permutation{1, 3, 0, 2}));
}

TEST(Subgradient, TightAtYAndEmptyYIsTieOrder) {
  auto f = small_instance("satcoverage", 12, 3);
  const Subset y(12, {4, 9, 1});
  const ModularFunction h = subgradient_at(*f, y);
  EXPECT_NEAR(h(y), f->evaluate(y), 1e-9);
  const Permutation ties = {11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0};
  EXPECT_EQ(subgradient_at(*f, Subset(12), ties).weights,
            extreme_point(*f, ties).weights);
}

TEST(Subgradient, RandomLowerBoundAudit) {
  std::mt19937_64 rng(4);
  for (const auto& kind : {"faclocation", "graphcut", "probsetcover", "deep",
                           "mixture", "clusteredconcave"}) {
    auto f = small_instance(kind, 16, 5);
    const Subset y = testing::random_subset(16, 0.5, rng);
    const ModularFunction h = subgradient_at(*f, y);
    for (int probe = 0; probe < 1000; ++probe) {
      const Subset x = testing::random_subset(16, 0.5, rng);
      EXPECT_LE(h(x), f->evaluate(x) + 1e-9) << kind;
    }
  }
}

TEST(Supergradient, GrowWeightsFollowFormula) {
  auto f = small_instance("feature", 10, 8);
  const Subset x(10, {2, 5, 7});
  const ModularFunction m = supergradient_grow(*f, x);
  const double fx = f->evaluate(x);
  for (Element j = 0; j < 10; ++j) {
    double expected;
    if (x.contains(j)) {
      Subset rest = x;
      rest.erase(j);
      expected = fx - f->evaluate(rest);
    } else {
      expected = f->evaluate({j});
    }
    EXPECT_NEAR(m.weights[j], expected, 1e-9);
  }
  EXPECT_NEAR(m(x), fx, 1e-9);
}

TEST(Supergradient, ShrinkWeightsFollowFormula) {
  auto f = small_instance("setcover", 10, 8);
  const Subset x(10, {0, 3});
  const ModularFunction m = supergradient_shrink(*f, x);
  const Subset all = Subset::full(10);
  const double fv = f->evaluate(all);
  const double fx = f->evaluate(x);
  for (Element j = 0; j < 10; ++j) {
    double expected;
    if (x.contains(j)) {
      Subset rest = all;
      rest.erase(j);
      expected = fv - f->evaluate(rest);
    } else {
      Subset more = x;
      more.insert(j);
      expected = f->evaluate(more) - fx;
    }
    EXPECT_NEAR(m.weights[j], expected, 1e-9);
  }
  EXPECT_NEAR(m(x), fx, 1e-9);
}

TEST(Supergradient, EmptyXGivesSingletons) {
  auto f = small_instance("faclocation", 8, 1);
  const ModularFunction m2 = supergradient_shrink(*f, Subset(8));
  for (Element j = 0; j < 8; ++j) {
    EXPECT_NEAR(m2.weights[j], f->evaluate({j}), 1e-12);
  }
  EXPECT_NEAR(m2.offset, 0.0, 1e-12);
}

TEST(Supergradient, ModularSelfBound) {
  auto f = testing::modular({1.0, -2.0, 3.0, 0.5, -0.5});
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const Subset x = testing::random_subset(5, 0.5, rng);
    const ModularFunction m1 = supergradient_grow(*f, x);
    const ModularFunction m2 = supergradient_shrink(*f, x);
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
      const Subset y = testing::mask_subset(5, mask);
      EXPECT_NEAR(m1(y), f->evaluate(y), 1e-12);
      EXPECT_NEAR(m2(y), f->evaluate(y), 1e-12);
    }
  }
}

TEST(Supergradient, RandomUpperBoundAudit) {
  std::mt19937_64 rng(7);
  for (const auto& kind : {"faclocation", "graphcut", "logdet", "setcover"}) {
    auto f = small_instance(kind, 16, 3);
    const Subset x = testing::random_subset(16, 0.4, rng);
    const ModularFunction m1 = supergradient_grow(*f, x);
    const ModularFunction m2 = supergradient_shrink(*f, x);
    for (int probe = 0; probe < 1000; ++probe) {
      const Subset y = testing::random_subset(16, 0.5, rng);
      const double fy = f->evaluate(y);
      EXPECT_GE(m1(y), fy - 1e-9) << kind;
      EXPECT_GE(m2(y), fy - 1e-9) << kind;
    }
  }
}

TEST(Supergradient, MemoizedVersusValueOracleCounters) {
  const FunctionSpec spec = testing::small_spec("faclocation", 40, 2);
  const Subset x(40, {1, 2, 3, 10, 20});
  auto pm = make_function(spec);
  auto vo = wrap_value_oracle(make_function(spec));
  const ModularFunction a = supergradient_grow(*pm, x);
  const ModularFunction b = supergradient_grow(*vo, x);
  EXPECT_EQ(pm->counters(), (EvalCounters{0, 40, 5, 1}));
  EXPECT_EQ(vo->counters().oracle_evals, 41);
  EXPECT_EQ(vo->counters().gain_evals, 0);
  for (Element j = 0; j < 40; ++j) {
    EXPECT_LE(testing::rel_err(a.weights[j], b.weights[j]), 1e-9);
  }
  EXPECT_LE(testing::rel_err(a.offset, b.offset), 1e-9);
}

TEST(Lovasz, HandExample) {
  Eigen::MatrixXd s(2, 2);
  s << 1.0, 0.5, 0.5, 1.0;
  auto f = make_facility_location(std::make_shared<const FacilityLocationData>(
      FacilityLocationData{s}));
  // sigma = (1, 0): 1.0 * f({1}) + 0.5 * (f(V) - f({1})) = 1.5 + 0.25.
  EXPECT_NEAR(lovasz_value(*f, Eigen::Vector2d(0.5, 1.0)), 1.75, 1e-12);
  EXPECT_NEAR(lovasz_value(*f, Eigen::Vector2d(1.0, 1.0)), 2.0, 1e-12);
}

TEST(Lovasz, IndicatorsGiveSetValues) {
  for (const auto& kind : {"graphcut", "clusteredsetcover", "dispersion-sum"}) {
    auto f = small_instance(kind, 8, 2);
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(8);
      for (int j = 0; j < 8; ++j) x[j] = (mask >> j & 1u) ? 1.0 : 0.0;
      const Subset set = testing::mask_subset(8, mask);
      EXPECT_LE(testing::rel_err(lovasz_value(*f, x), f->evaluate(set)), 1e-9);
      EXPECT_EQ(lovasz_subgradient(*f, x).weights,
                subgradient_at(*f, set).weights);
    }
  }
}

TEST(Lovasz, SubgradientPairsToValue) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto f = small_instance("mixture", 12, 4);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::VectorXd x(12);
    for (auto& v : x) v = u(rng);
    EXPECT_NEAR(lovasz_subgradient(*f, x).weights.dot(x), lovasz_value(*f, x),
                1e-9);
  }
}

TEST(Lovasz, ConvexityAudit) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& kind : {"graphcut", "faclocation", "logdet", "deep"}) {
    auto f = small_instance(kind, 10, 1);
    for (int rep = 0; rep < 200; ++rep) {
      Eigen::VectorXd a(10), b(10);
      for (auto& v : a) v = u(rng);
      for (auto& v : b) v = u(rng);
      const double mid = lovasz_value(*f, 0.5 * a + 0.5 * b);
      const double avg =
          0.5 * lovasz_value(*f, a) + 0.5 * lovasz_value(*f, b);
      EXPECT_LE(mid, avg + 1e-9 * std::max(1.0, std::abs(avg))) << kind;
    }
  }
}

TEST(Lovasz, RejectsBadInput) {
  auto f = small_facility();
  EXPECT_THROW(lovasz_value(*f, Eigen::Vector2d(0.0, 1.0)), InputError);
  EXPECT_THROW(
      lovasz_value(*f, Eigen::Vector3d(0.0, std::nan(""), 1.0)),
      InputError);
}

// Exhaustive bound checks on every set of small instances.
class ExhaustiveBounds : public ::testing::TestWithParam<std::string> {};

TEST_P(ExhaustiveBounds, SandwichOnEverySet) {
  const std::string kind = GetParam();
  const Element n = 9;
  const double tol = 1e-9;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto f = small_instance(kind, n, seed);
    const auto values = testing::all_values(*f);
    std::mt19937_64 rng(seed);
    for (int anchor = 0; anchor < 4; ++anchor) {
      const Subset x = testing::random_subset(n, 0.5, rng);
      const ModularFunction h = subgradient_at(*f, x);
      const ModularFunction m1 = supergradient_grow(*f, x);
      const ModularFunction m2 = supergradient_shrink(*f, x);
      for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
        const Subset y = testing::mask_subset(n, mask);
        const double scale = tol * std::max(1.0, std::abs(values[mask]));
        ASSERT_LE(h(y), values[mask] + scale);
        ASSERT_GE(m1(y), values[mask] - scale);
        ASSERT_GE(m2(y), values[mask] - scale);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Submodular, ExhaustiveBounds,
                         ::testing::Values("faclocation", "satcoverage",
                                           "graphcut", "setcover",
                                           "probsetcover", "logdet",
                                           "mixture"));

}  // namespace
}  // namespace submemo
