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

// Concrete set function classes. Every class keeps f(empty) = 0 and exposes
// its memoized statistic through the SetFunction contract.

#ifndef SUBMEMO_FUNCTIONS_HPP_
#define SUBMEMO_FUNCTIONS_HPP_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "submemo/core.hpp"

namespace submemo {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

enum class ConcaveKind { kSqrt, kLog1p, kPower };

// Closed family of concave transforms psi with psi(0) = 0.
struct Concave {
  ConcaveKind kind = ConcaveKind::kSqrt;
  double exponent = 0.5;  // used by kPower, in (0, 1)

  static Concave sqrt() { return {ConcaveKind::kSqrt, 0.5}; }
  static Concave log1p() { return {ConcaveKind::kLog1p, 0.0}; }
  static Concave power(double p) { return {ConcaveKind::kPower, p}; }

  double operator()(double x) const;
  void validate() const;
};

std::string to_string(const Concave& c);
// "sqrt", "log1p" or "pow:<p>".
Concave parse_concave(const std::string& text);

// f(X) = sum_i max_{j in X} s_ij. Statistic: top-2 values per row.
struct FacilityLocationData {
  Eigen::MatrixXd similarity;
};

// f(X) = sum_i min(sum_{j in X} s_ij, alpha_i).
struct SaturatedCoverageData {
  Eigen::MatrixXd similarity;
  Eigen::VectorXd saturation;

  // alpha_i = fraction * sum_j s_ij.
  static SaturatedCoverageData with_fraction(Eigen::MatrixXd s,
                                             double fraction = 0.25);
};

// f(X) = lambda * sum_{i in V} sum_{j in X} s_ij - sum_{i,j in X} s_ij.
struct GraphCutData {
  Eigen::MatrixXd similarity;  // symmetric, non-negative
  double lambda = 1.0;
};

// f(X) = sum_e psi(m_e(X)); features is |F| x n, column j holds m_e(j).
struct FeatureBasedData {
  SparseMatrix features;
  Concave concave;
};

// f(X) = w(union_{j in X} S_j).
struct SetCoverData {
  Element n = 0;
  std::int32_t universe = 0;
  std::vector<std::vector<std::int32_t>> sets;  // one per element
  Eigen::VectorXd weights;                      // one per universe item
};

// f(X) = sum_c w(Gamma(X) cap C_c).
struct ClusteredSetCoverData {
  SetCoverData cover;
  std::vector<std::vector<std::int32_t>> clusters;  // subsets of the universe
};

// f(X) = sum_u w_u (1 - prod_{j in X} (1 - p_uj)); probabilities is |U| x n.
struct ProbabilisticSetCoverData {
  Eigen::MatrixXd probabilities;
  Eigen::VectorXd weights;
};

// f(X) = sum_c psi(m_c(X cap C_c)).
struct ClusteredConcaveData {
  Element n = 0;
  std::vector<std::vector<Element>> clusters;
  std::vector<Eigen::VectorXd> cluster_weights;  // aligned with clusters
  Concave concave;
};

// f(X) = log det((S + ridge I)_X). Statistic: Cholesky factor of the
// principal submatrix in memo order.
struct LogDetData {
  Eigen::MatrixXd kernel;
  // Unset: 0, falling back to 1e-6 if S is not positive definite.
  std::optional<double> ridge;
};

enum class DispersionKind { kMin, kSum, kMinSum };

// kMin:    min_{k != l in X} d_kl
// kSum:    sum_{k, l in X} d_kl (ordered pairs)
// kMinSum: sum_{k in X} min_{l in X, l != k} d_kl
// All three are 0 when |X| < 2.
struct DispersionData {
  Eigen::MatrixXd distance;  // symmetric, non-negative, zero diagonal
  DispersionKind kind = DispersionKind::kMin;
};

// f(X) = sum_{j in X} w_j, any signs.
struct ModularData {
  Eigen::VectorXd weights;
};

// Two-layer deep submodular function
//   f(X) = sum_a top_a * outer(sum_b mixing_ab * inner(m_b(X)))
// with features |F2| x n and mixing |F1| x |F2|, all entries non-negative.
struct DeepSubmodularData {
  SparseMatrix features;
  Eigen::MatrixXd mixing;
  Eigen::VectorXd top_weights;
  Concave inner;
  Concave outer;
};

struct MixtureSpec;

// Serializable description of a function instance.
using FunctionSpec = std::variant<
    std::shared_ptr<const FacilityLocationData>,
    std::shared_ptr<const SaturatedCoverageData>,
    std::shared_ptr<const GraphCutData>,
    std::shared_ptr<const FeatureBasedData>,
    std::shared_ptr<const SetCoverData>,
    std::shared_ptr<const ClusteredSetCoverData>,
    std::shared_ptr<const ProbabilisticSetCoverData>,
    std::shared_ptr<const ClusteredConcaveData>,
    std::shared_ptr<const LogDetData>,
    std::shared_ptr<const DispersionData>,
    std::shared_ptr<const ModularData>,
    std::shared_ptr<const DeepSubmodularData>,
    std::shared_ptr<const MixtureSpec>>;

struct MixtureSpec {
  std::vector<std::pair<double, FunctionSpec>> components;
};

template <typename Data>
FunctionSpec make_spec(Data data) {
  return std::make_shared<const Data>(std::move(data));
}

// All factories validate the data and return an instance memoizing the
// empty set. They throw InputError on invalid data.
std::unique_ptr<SetFunction> make_facility_location(
    std::shared_ptr<const FacilityLocationData> data);
std::unique_ptr<SetFunction> make_saturated_coverage(
    std::shared_ptr<const SaturatedCoverageData> data);
std::unique_ptr<SetFunction> make_graph_cut(
    std::shared_ptr<const GraphCutData> data);
std::unique_ptr<SetFunction> make_feature_based(
    std::shared_ptr<const FeatureBasedData> data);
std::unique_ptr<SetFunction> make_set_cover(
    std::shared_ptr<const SetCoverData> data);
std::unique_ptr<SetFunction> make_clustered_set_cover(
    std::shared_ptr<const ClusteredSetCoverData> data);
std::unique_ptr<SetFunction> make_probabilistic_set_cover(
    std::shared_ptr<const ProbabilisticSetCoverData> data);
std::unique_ptr<SetFunction> make_clustered_concave(
    std::shared_ptr<const ClusteredConcaveData> data);
std::unique_ptr<SetFunction> make_log_det(
    std::shared_ptr<const LogDetData> data);
std::unique_ptr<SetFunction> make_dispersion(
    std::shared_ptr<const DispersionData> data);
std::unique_ptr<SetFunction> make_modular(
    std::shared_ptr<const ModularData> data);
std::unique_ptr<SetFunction> make_deep_submodular(
    std::shared_ptr<const DeepSubmodularData> data);

struct MixtureComponent {
  double weight = 1.0;
  std::unique_ptr<SetFunction> function;
};

// f(X) = sum_i w_i f_i(X), w_i >= 0. Components must share the ground set;
// their memo states are reset to the empty set.
std::unique_ptr<SetFunction> make_mixture(
    std::vector<MixtureComponent> components);

std::unique_ptr<SetFunction> make_function(const FunctionSpec& spec);

// Shorthands for tests and examples.
std::unique_ptr<SetFunction> make_modular(Eigen::VectorXd weights);

}  // namespace submemo

#endif  // SUBMEMO_FUNCTIONS_HPP_
