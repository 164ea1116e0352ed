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

#include <numeric>

#include "helpers.hpp"
#include "submemo/bounds.hpp"
#include "submemo/minimize.hpp"

namespace submemo {
namespace {

using testing::small_instance;

// f + modular(shift), the "c(X) - lambda |X|" shape with a seeded shift.
std::unique_ptr<SetFunction> shifted(const std::string& kind, Element n,
                                     std::uint64_t seed, double scale) {
  auto base = small_instance(kind, n, seed);
  std::mt19937_64 rng(seed + 1000);
  std::uniform_real_distribution<double> u(-scale, 0.2 * scale);
  Eigen::VectorXd w(n);
  for (auto& v : w) v = u(rng);
  std::vector<MixtureComponent> parts;
  parts.push_back({1.0, std::move(base)});
  parts.push_back({1.0, make_modular(w)});
  return make_mixture(std::move(parts));
}

TEST(LinearOracle, ModularReturnsWeights) {
  auto f = testing::modular({1.0, -2.0, 0.5});
  EXPECT_EQ(linear_oracle(*f, Eigen::Vector3d(0.3, 0.1, 0.9)).weights,
            Eigen::Vector3d(1.0, -2.0, 0.5));
}

TEST(LinearOracle, ZeroDirectionIsAscendingSweep) {
  auto f = small_instance("faclocation", 6, 2);
  Permutation ids(6);
  std::iota(ids.begin(), ids.end(), 0);
  EXPECT_EQ(linear_oracle(*f, Eigen::VectorXd::Zero(6)).weights,
            extreme_point(*f, ids).weights);
}

TEST(LinearOracle, BeatsRandomExtremePoints) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  auto f = small_instance("mixture", 10, 4);
  Eigen::VectorXd x(10);
  for (auto& v : x) v = g(rng);
  const double best = linear_oracle(*f, x).weights.dot(x);
  Permutation p(10);
  std::iota(p.begin(), p.end(), 0);
  for (int rep = 0; rep < 100; ++rep) {
    std::shuffle(p.begin(), p.end(), rng);
    EXPECT_GE(best, extreme_point(*f, p).weights.dot(x) - 1e-9);
  }
}

TEST(MinNorm, ModularTwoElements) {
  auto f = testing::modular({-1.0, 2.0});
  const auto r = min_norm_point(*f);
  EXPECT_NEAR(r.point[0], -1.0, 1e-12);
  EXPECT_NEAR(r.point[1], 2.0, 1e-12);
  EXPECT_EQ(r.minimizer_min.sorted(), (std::vector<Element>{0}));
  EXPECT_EQ(r.value, -1.0);
}

TEST(MinNorm, SymmetricCutHasEmptyAndFullMinimizers) {
  auto f = testing::two_node_cut();
  const auto r = min_norm_point(*f);
  EXPECT_TRUE(r.minimizer_min.empty());
  EXPECT_EQ(r.minimizer_max.size(), 2u);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(MinNorm, MatchesBruteForceAndStaysInBasePolytope) {
  for (const auto& kind : {"faclocation", "graphcut", "setcover", "mixture"}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto f = shifted(kind, 10, seed, 1.5);
      const BruteForceResult bf = brute_force_min(*f);
      const auto r = min_norm_point(*f);
      EXPECT_NEAR(r.value, bf.value, 1e-6) << kind << " seed " << seed;
      EXPECT_NEAR(f->evaluate(r.minimizer_min), r.value, 1e-9);
      for (Element j : r.minimizer_min) EXPECT_TRUE(r.minimizer_max.contains(j));
      const double fv = f->evaluate(Subset::full(10));
      EXPECT_NEAR(r.point.sum(), fv, 1e-8 * std::max(1.0, std::abs(fv)));
      const auto values = testing::all_values(*f);
      for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
        double xs = 0.0;
        for (int j = 0; j < 10; ++j) {
          if (mask >> j & 1u) xs += r.point[j];
        }
        EXPECT_LE(xs, values[mask] + 1e-8);
      }
    }
  }
}

TEST(MinNorm, NormNonIncreasing) {
  auto f = shifted("faclocation", 14, 3, 2.0);
  const auto r = min_norm_point(*f);
  for (std::size_t i = 1; i < r.objective.size(); ++i) {
    EXPECT_LE(r.objective[i], r.objective[i - 1] + 1e-12);
  }
}

TEST(MinNorm, IterationCapRaisesWithIterate) {
  auto f = shifted("faclocation", 14, 3, 2.0);
  MinNormOptions opts;
  opts.max_iterations = 1;
  try {
    min_norm_point(*f, opts);
    FAIL() << "expected a convergence error";
  } catch (const MinNormConvergenceError& e) {
    EXPECT_EQ(e.point().size(), 14);
    EXPECT_GT(e.gap(), 0.0);
  }
}

TEST(MinNorm, OracleCallCountsPerModel) {
  const FunctionSpec spec = testing::small_spec("faclocation", 12, 1);
  auto pm = make_function(spec);
  const auto r = min_norm_point(*pm);
  // One sweep per major iteration plus the initial point and extraction.
  EXPECT_EQ(r.counters.oracle_evals, 0);
  EXPECT_EQ(r.counters.gain_evals % 12, 0);
  EXPECT_EQ(r.counters.gain_evals, r.counters.memo_updates);
  auto vo = wrap_value_oracle(make_function(spec));
  const auto rv = min_norm_point(*vo);
  EXPECT_EQ(rv.counters.gain_evals, 0);
  EXPECT_GT(rv.counters.oracle_evals, 0);
  EXPECT_NEAR(rv.value, r.value, 1e-9);
}

TEST(LovaszMin, ModularConvergesToNegativeSupport) {
  auto f = testing::modular({-1.0, 2.0});
  const auto r = lovasz_subgradient_min(*f);
  EXPECT_EQ(r.minimizer_min.sorted(), (std::vector<Element>{0}));
  EXPECT_EQ(r.value, -1.0);
}

TEST(LovaszMin, BestLevelSetBeatsFinalRounding) {
  auto f = shifted("graphcut", 10, 2, 1.0);
  const auto r = lovasz_subgradient_min(*f, {200, 1.0});
  Subset rounded(10);
  for (Element j = 0; j < 10; ++j) {
    if (r.point[j] >= 0.5) rounded.insert(j);
  }
  EXPECT_LE(r.value, f->evaluate(rounded) + 1e-12);
}

TEST(LovaszMin, ReachesBruteForceMinimum) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto f = shifted("faclocation", 10, seed, 1.5);
    const auto r = lovasz_subgradient_min(*f);
    EXPECT_NEAR(r.value, brute_force_min(*f).value, 1e-6) << seed;
  }
}

TEST(MinimizeModular, AtLeastKAndExplicitFamily) {
  const ModularFunction m(0.0, Eigen::Vector4d(3.0, -1.0, 2.0, -0.5));
  EXPECT_EQ(minimize_modular(m, AtLeastK{0}).sorted(),
            (std::vector<Element>{1, 3}));
  EXPECT_EQ(minimize_modular(m, AtLeastK{3}).sorted(),
            (std::vector<Element>{1, 2, 3}));
  const SetFamily fam{{Subset(4, {0}), Subset(4, {2, 3})}};
  EXPECT_EQ(minimize_modular(m, fam).sorted(), (std::vector<Element>{2, 3}));
  EXPECT_THROW(minimize_modular(m, AtLeastK{5}), InputError);
  EXPECT_THROW(minimize_modular(m, SetFamily{}), InputError);
}

TEST(Mmin, ModularExactInOneStep) {
  auto f = testing::modular({3.0, -1.0, 2.0, 1.0});
  const auto r = mmin_constrained(*f, AtLeastK{2});
  EXPECT_EQ(r.minimizer_min.sorted(), (std::vector<Element>{1, 3}));
  EXPECT_EQ(r.value, 0.0);
}

TEST(Mmin, ObjectiveNonIncreasing) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto f = small_instance("faclocation", 15, seed);
    const auto r = mmin_constrained(*f, AtLeastK{4});
    for (std::size_t i = 1; i < r.objective.size(); ++i) {
      EXPECT_LE(r.objective[i], r.objective[i - 1] + 1e-9);
    }
    EXPECT_GE(r.minimizer_min.size(), 4u);
    EXPECT_NEAR(f->evaluate(r.minimizer_min), r.value, 1e-9);
  }
}

// MMin is a local method: it is compared against the typical random
// feasible set, not the best of many samples.
TEST(Mmin, BeatsTypicalRandomFeasibleSet) {
  const Element n = 40;
  std::mt19937_64 rng(6);
  std::vector<Element> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto f = make_function(gen_synthetic("clusteredsetcover", n, seed));
    const auto r = mmin_constrained(*f, AtLeastK{4});
    std::vector<double> sample;
    for (int rep = 0; rep < 10000; ++rep) {
      std::shuffle(ids.begin(), ids.end(), rng);
      sample.push_back(f->evaluate(std::span<const Element>(ids).first(4)));
    }
    std::nth_element(sample.begin(), sample.begin() + 5000, sample.end());
    EXPECT_LE(r.value, sample[5000]) << seed;
  }
}

}  // namespace
}  // namespace submemo
