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

#include "helpers.hpp"
#include "submemo/bounds.hpp"
#include "submemo/constrained.hpp"
#include "submemo/maximize.hpp"
#include "submemo/minimize.hpp"

namespace submemo {
namespace {

using testing::small_instance;

ModularFunction unit_costs(Element n) {
  return ModularFunction(0.0, Eigen::VectorXd::Ones(n));
}

void expect_monotone_trace(const IterativeResult& r, bool decreasing) {
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    if (decreasing) {
      EXPECT_LE(r.trace[i], r.trace[i - 1] + 1e-12);
    } else {
      EXPECT_GE(r.trace[i], r.trace[i - 1] - 1e-12);
    }
  }
}

TEST(SetCover, ModularUnitCostsTakesLargestWeights) {
  auto g = testing::modular({1.0, 4.0, 2.0, 3.0});
  const Subset x = submodular_set_cover(*g, unit_costs(4), 6.5);
  EXPECT_EQ(x.sorted(), (std::vector<Element>{1, 3}));
}

TEST(SetCover, SmallInstanceCostsTwo) {
  auto g = testing::small_set_cover();
  const Subset x = submodular_set_cover(*g, unit_costs(3), 3.0);
  EXPECT_EQ(x.sorted(), (std::vector<Element>{0, 1}));
  EXPECT_THROW(submodular_set_cover(*g, unit_costs(3), 3.5), InputError);
}

TEST(SetCover, ReachesBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = small_instance("probsetcover", 20, seed);
    const double c = 0.7 * g->evaluate(Subset::full(20));
    const Subset x = submodular_set_cover(*g, unit_costs(20), c);
    EXPECT_GE(g->evaluate(x), c - 1e-9 * std::max(1.0, c));
  }
}

TEST(Scsc, ModularFIsOneCoverCall) {
  auto f = testing::modular({1.0, 3.0, 2.0});
  auto g = testing::small_set_cover();
  const auto r = scsc_solve(*f, *g, 3.0);
  const Subset direct = submodular_set_cover(
      *g, ModularFunction(0.0, Eigen::Vector3d(1.0, 3.0, 2.0)), 3.0);
  EXPECT_EQ(r.set, direct);
  EXPECT_EQ(r.objective, f->evaluate(direct));
}

TEST(Scsc, BestObjectiveNonIncreasingAndFeasible) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto f = small_instance("faclocation", 12, seed);
    auto g = small_instance("setcover", 12, seed + 50);
    const double c = 0.6 * g->evaluate(Subset::full(12));
    const auto r = scsc_solve(*f, *g, c);
    expect_monotone_trace(r, true);
    EXPECT_GE(g->evaluate(r.set), c - 1e-9 * std::max(1.0, c));
    EXPECT_NEAR(f->evaluate(r.set), r.objective, 1e-9);
    EXPECT_EQ(r.counters.oracle_evals, 0);
  }
}

TEST(Scsk, ModularFIsOneKnapsackCall) {
  auto f = testing::modular({1.0, 1.0, 1.0});
  auto g = testing::small_set_cover();
  const auto r = scsk_solve(*f, *g, 2.0);
  EXPECT_EQ(r.set.sorted(), (std::vector<Element>{0, 1}));
  EXPECT_EQ(r.objective, 3.0);
}

TEST(Scsk, IteratesAlwaysFeasible) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto f = small_instance("feature", 12, seed);
    auto g = small_instance("faclocation", 12, seed + 9);
    const double b = 0.4 * f->evaluate(Subset::full(12));
    const auto r = scsk_solve(*f, *g, b);
    expect_monotone_trace(r, false);
    EXPECT_LE(f->evaluate(r.set), b + 1e-9 * std::max(1.0, b));
    EXPECT_NEAR(g->evaluate(r.set), r.objective, 1e-9);
  }
}

TEST(Scsk, TinyBudgetGivesEmptySet) {
  auto f = small_instance("faclocation", 8, 1);
  auto g = small_instance("setcover", 8, 1);
  const auto r = scsk_solve(*f, *g, 1e-6);
  EXPECT_TRUE(r.set.empty());
  EXPECT_THROW(scsk_solve(*f, *g, -1.0), InputError);
}

TEST(Ds, ZeroGIsSubmodularMinimization) {
  auto f = testing::modular({-1.0, 2.0, -0.5, 0.3});
  auto zero = testing::modular({0.0, 0.0, 0.0, 0.0});
  const auto r = ds_minimize(*f, *zero, DsVariant::kSubSup);
  EXPECT_EQ(r.set.sorted(), (std::vector<Element>{0, 2}));
  EXPECT_EQ(r.objective, min_norm_point(*f).value);
}

TEST(Ds, ZeroFIsUnconstrainedMaximization) {
  auto zero = testing::modular(std::vector<double>(10, 0.0));
  auto g = small_instance("graphcut", 10, 3);
  const auto r = ds_minimize(*zero, *g, DsVariant::kSupSub);
  const auto ls = local_search_usm(*g);
  EXPECT_NEAR(-r.objective, ls.value, 1e-9);
}

TEST(Ds, EveryVariantImprovesFromEmpty) {
  for (const auto variant :
       {DsVariant::kSubSup, DsVariant::kSupSub, DsVariant::kModMod}) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      auto f = small_instance("faclocation", 11, seed);
      auto g = small_instance("feature", 11, seed + 3);
      const auto r = ds_minimize(*f, *g, variant, seed);
      expect_monotone_trace(r, true);
      EXPECT_LE(r.objective, 1e-12);
      EXPECT_NEAR(f->evaluate(r.set) - g->evaluate(r.set), r.objective, 1e-9);
      EXPECT_EQ(r.counters.oracle_evals, 0);
    }
  }
}

TEST(Ds, RejectsMismatchedGroundSets) {
  auto f = small_instance("faclocation", 5, 1);
  auto g = small_instance("faclocation", 6, 1);
  EXPECT_THROW(ds_minimize(*f, *g, DsVariant::kModMod), InputError);
  EXPECT_THROW(scsc_solve(*f, *g, 1.0), InputError);
}

TEST(Ds, BoundSandwichAtIterates) {
  std::mt19937_64 rng(2);
  auto f = small_instance("setcover", 12, 4);
  auto g = small_instance("faclocation", 12, 4);
  const auto r = ds_minimize(*f, *g, DsVariant::kModMod);
  for (SetFunction* h : {f.get(), g.get()}) {
    const ModularFunction lo = subgradient_at(*h, r.set);
    const ModularFunction hi = supergradient_grow(*h, r.set);
    for (int probe = 0; probe < 20; ++probe) {
      const Subset y = testing::random_subset(12, 0.5, rng);
      const double v = h->evaluate(y);
      EXPECT_LE(lo(y), v + 1e-9);
      EXPECT_GE(hi(y), v - 1e-9);
    }
  }
}

}  // namespace
}  // namespace submemo
