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

// Shared fixtures: small seeded instances and exhaustive helpers.

#ifndef SUBMEMO_TESTS_HELPERS_HPP_
#define SUBMEMO_TESTS_HELPERS_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "submemo/bench.hpp"
#include "submemo/core.hpp"
#include "submemo/functions.hpp"

namespace submemo::testing {

// Parameters that keep small instances non-degenerate.
inline Params small_params(const std::string& kind, std::uint64_t seed) {
  Params p;
  if (kind == "setcover" || kind == "clusteredsetcover" ||
      kind == "probsetcover") {
    p["density"] = 0.25;
  } else if (kind == "graphcut") {
    p["lambda"] = 0.5 + static_cast<double>(seed % 5) * 0.5;
  } else if (kind == "feature") {
    p["features"] = 24;
    p["nnz"] = 4;
  } else if (kind == "mixture") {
    p["features"] = 24;
  }
  return p;
}

inline FunctionSpec small_spec(const std::string& kind, Element n,
                               std::uint64_t seed) {
  return gen_synthetic(kind, n, seed, small_params(kind, seed));
}

inline std::unique_ptr<SetFunction> small_instance(const std::string& kind,
                                                   Element n,
                                                   std::uint64_t seed) {
  return make_function(small_spec(kind, n, seed));
}

inline const std::vector<std::string>& all_kinds() { return synthetic_kinds(); }

inline const std::vector<std::string>& monotone_kinds() {
  static const std::vector<std::string> kinds = {
      "faclocation", "satcoverage",       "feature",      "setcover",
      "clusteredsetcover", "probsetcover", "clusteredconcave", "deep",
      "mixture"};
  return kinds;
}

// Classes whose gains are non-increasing in the context set.
inline bool is_submodular_kind(const std::string& kind) {
  return kind.rfind("dispersion", 0) != 0;
}

inline Subset random_subset(Element n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Subset s(n);
  for (Element j = 0; j < n; ++j) {
    if (coin(rng)) s.insert(j);
  }
  return s;
}

inline Subset mask_subset(Element n, std::uint64_t mask) {
  Subset s(n);
  for (Element j = 0; j < n; ++j) {
    if (mask >> j & 1u) s.insert(j);
  }
  return s;
}

// From-scratch f(X) for every bit mask X.
inline std::vector<double> all_values(SetFunction& f) {
  const Element n = f.ground_size();
  std::vector<double> v(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < v.size(); ++m) {
    v[m] = f.evaluate(mask_subset(n, m));
  }
  return v;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline Eigen::MatrixXd small_facility_matrix() {
  Eigen::MatrixXd s(3, 3);
  s << 1.0, 0.5, 0.2, 0.5, 1.0, 0.3, 0.2, 0.3, 1.0;
  return s;
}

inline std::unique_ptr<SetFunction> small_facility() {
  return make_facility_location(std::make_shared<const FacilityLocationData>(
      FacilityLocationData{small_facility_matrix()}));
}

// S0 = {a, b}, S1 = {b, c}, S2 = {c}, unit weights.
inline std::unique_ptr<SetFunction> small_set_cover() {
  SetCoverData d;
  d.n = 3;
  d.universe = 3;
  d.sets = {{0, 1}, {1, 2}, {2}};
  d.weights = Eigen::VectorXd::Ones(3);
  return make_set_cover(std::make_shared<const SetCoverData>(std::move(d)));
}

// Two nodes joined by a unit edge, lambda = 1.
inline std::unique_ptr<SetFunction> two_node_cut() {
  Eigen::MatrixXd s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  return make_graph_cut(
      std::make_shared<const GraphCutData>(GraphCutData{s, 1.0}));
}

inline std::unique_ptr<SetFunction> modular(std::vector<double> w) {
  return make_modular(Eigen::Map<Eigen::VectorXd>(w.data(),
                                                  static_cast<Eigen::Index>(
                                                      w.size())));
}

}  // namespace submemo::testing

#endif  // SUBMEMO_TESTS_HELPERS_HPP_
