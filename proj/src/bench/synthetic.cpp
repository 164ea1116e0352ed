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
#include <cmath>
#include <numeric>
#include <random>

#include "submemo/bench.hpp"

namespace submemo {
namespace {

using Rng = std::mt19937_64;

double param(const Params& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

Element count_param(const Params& p, const std::string& key, double fallback,
                    Element lo = 1) {
  const double v = param(p, key, fallback);
  if (!(v >= lo) || v != std::floor(v) || v > 1e9) {
    throw InputError("synthetic: parameter '" + key + "' must be an integer >= " +
                     std::to_string(lo));
  }
  return static_cast<Element>(v);
}

double unit_param(const Params& p, const std::string& key, double fallback) {
  const double v = param(p, key, fallback);
  if (!(v > 0.0 && v <= 1.0)) {
    throw InputError("synthetic: parameter '" + key + "' must lie in (0, 1]");
  }
  return v;
}

// Dot products of random unit vectors, clipped at zero. Symmetric with a
// unit diagonal.
Eigen::MatrixXd unit_vector_similarity(Element n, Element dim, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd u(dim, n);
  for (Element j = 0; j < n; ++j) {
    for (Element d = 0; d < dim; ++d) u(d, j) = normal(rng);
    const double norm = u.col(j).norm();
    if (norm > 0.0) {
      u.col(j) /= norm;
    } else {
      u(0, j) = 1.0;
    }
  }
  Eigen::MatrixXd s = (u.transpose() * u).cwiseMax(0.0);
  // Exact symmetry and diagonal, independent of the product's rounding.
  s = (0.5 * (s + s.transpose())).eval();
  s.diagonal().setOnes();
  return s;
}

std::vector<std::int32_t> sample_distinct(std::int32_t universe,
                                          std::int32_t count, Rng& rng) {
  std::vector<std::int32_t> ids(static_cast<std::size_t>(universe));
  std::iota(ids.begin(), ids.end(), 0);
  for (std::int32_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::int32_t> pick(i, universe - 1);
    std::swap(ids[i], ids[pick(rng)]);
  }
  ids.resize(static_cast<std::size_t>(count));
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::vector<std::int32_t>> random_partition(std::int32_t items,
                                                        std::int32_t parts,
                                                        Rng& rng) {
  std::vector<std::int32_t> ids(static_cast<std::size_t>(items));
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<std::vector<std::int32_t>> out(static_cast<std::size_t>(parts));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out[i % out.size()].push_back(ids[i]);
  }
  for (auto& part : out) std::sort(part.begin(), part.end());
  std::erase_if(out, [](const auto& part) { return part.empty(); });
  return out;
}

Eigen::VectorXd uniform_vector(Eigen::Index size, double lo, double hi,
                               Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = u(rng);
  return v;
}

SetCoverData random_cover(Element n, const Params& p, Rng& rng) {
  SetCoverData d;
  d.n = n;
  d.universe = count_param(p, "universe", n);
  const double density = unit_param(p, "density", 0.05);
  std::binomial_distribution<std::int32_t> size(d.universe, density);
  d.sets.resize(static_cast<std::size_t>(n));
  for (auto& set : d.sets) {
    set = sample_distinct(d.universe, std::max(1, size(rng)), rng);
  }
  d.weights = uniform_vector(d.universe, 0.5, 1.5, rng);
  return d;
}

// |F| x n sparse scores with `nnz` random features per element.
SparseMatrix random_features(Element n, std::int32_t features,
                             std::int32_t nnz, Rng& rng) {
  nnz = std::min(nnz, features);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(n) * nnz);
  for (Element j = 0; j < n; ++j) {
    std::vector<std::int32_t> picked;
    std::uniform_int_distribution<std::int32_t> pick(0, features - 1);
    while (static_cast<std::int32_t>(picked.size()) < nnz) {
      const std::int32_t e = pick(rng);
      if (std::find(picked.begin(), picked.end(), e) == picked.end()) {
        picked.push_back(e);
      }
    }
    for (std::int32_t e : picked) t.emplace_back(e, j, score(rng));
  }
  SparseMatrix m(features, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

Concave concave_param(const Params& p) {
  if (p.count("power")) {
    Concave c = Concave::power(p.at("power"));
    c.validate();
    return c;
  }
  return Concave::sqrt();
}

Eigen::MatrixXd point_distances(Element n, Element dim, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd pts(dim, n);
  for (Element j = 0; j < n; ++j) {
    for (Element d = 0; d < dim; ++d) pts(d, j) = u(rng);
  }
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = a + 1; b < n; ++b) {
      dist(a, b) = dist(b, a) = (pts.col(a) - pts.col(b)).norm();
    }
  }
  return dist;
}

}  // namespace

const std::vector<std::string>& synthetic_kinds() {
  static const std::vector<std::string> kinds = {
      "faclocation",    "satcoverage",     "graphcut",
      "feature",        "setcover",        "clusteredsetcover",
      "probsetcover",   "clusteredconcave", "logdet",
      "dispersion-min", "dispersion-sum",  "dispersion-minsum",
      "modular",        "deep",            "mixture"};
  return kinds;
}

FunctionSpec gen_synthetic(const std::string& kind, Element n,
                           std::uint64_t seed, const Params& p) {
  if (n < 1) throw InputError("synthetic: n must be positive");
  Rng rng(seed);
  if (kind == "faclocation") {
    return make_spec(FacilityLocationData{
        unit_vector_similarity(n, count_param(p, "dim", 16), rng)});
  }
  if (kind == "satcoverage") {
    return make_spec(SaturatedCoverageData::with_fraction(
        unit_vector_similarity(n, count_param(p, "dim", 16), rng),
        unit_param(p, "fraction", 0.25)));
  }
  if (kind == "graphcut") {
    const double lambda = param(p, "lambda", 1.0);
    return make_spec(GraphCutData{
        unit_vector_similarity(n, count_param(p, "dim", 16), rng), lambda});
  }
  if (kind == "feature") {
    return make_spec(FeatureBasedData{
        random_features(n, count_param(p, "features", 256),
                        count_param(p, "nnz", 8), rng),
        concave_param(p)});
  }
  if (kind == "setcover") return make_spec(random_cover(n, p, rng));
  if (kind == "clusteredsetcover") {
    ClusteredSetCoverData d;
    d.cover = random_cover(n, p, rng);
    const auto clusters = count_param(
        p, "clusters", std::ceil(std::sqrt(static_cast<double>(d.cover.universe))));
    d.clusters = random_partition(d.cover.universe, clusters, rng);
    return make_spec(std::move(d));
  }
  if (kind == "probsetcover") {
    ProbabilisticSetCoverData d;
    const auto universe = count_param(p, "universe", n);
    const double density = unit_param(p, "density", 0.05);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    d.probabilities = Eigen::MatrixXd::Zero(universe, n);
    for (Element j = 0; j < n; ++j) {
      for (std::int32_t item = 0; item < universe; ++item) {
        if (u(rng) < density) d.probabilities(item, j) = u(rng);
      }
    }
    d.weights = uniform_vector(universe, 0.5, 1.5, rng);
    return make_spec(std::move(d));
  }
  if (kind == "clusteredconcave") {
    ClusteredConcaveData d;
    d.n = n;
    const auto clusters =
        count_param(p, "clusters", std::ceil(std::sqrt(static_cast<double>(n))));
    d.clusters = random_partition(n, clusters, rng);
    for (const auto& c : d.clusters) {
      d.cluster_weights.push_back(
          uniform_vector(static_cast<Eigen::Index>(c.size()), 0.0, 1.0, rng));
    }
    d.concave = concave_param(p);
    return make_spec(std::move(d));
  }
  if (kind == "logdet") {
    const Element dim = count_param(p, "dim", 2.0 * n);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd g(n, dim);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
    Eigen::MatrixXd k = g * g.transpose() / static_cast<double>(dim);
    k = (0.5 * (k + k.transpose())).eval();
    return make_spec(LogDetData{std::move(k), std::nullopt});
  }
  if (kind.rfind("dispersion-", 0) == 0) {
    DispersionKind which;
    if (kind == "dispersion-min") {
      which = DispersionKind::kMin;
    } else if (kind == "dispersion-sum") {
      which = DispersionKind::kSum;
    } else if (kind == "dispersion-minsum") {
      which = DispersionKind::kMinSum;
    } else {
      throw InputError("synthetic: unknown kind '" + kind + "'");
    }
    return make_spec(
        DispersionData{point_distances(n, count_param(p, "dim", 2), rng), which});
  }
  if (kind == "modular") {
    return make_spec(ModularData{uniform_vector(
        n, param(p, "low", -1.0), param(p, "high", 1.0), rng)});
  }
  if (kind == "deep") {
    DeepSubmodularData d;
    const auto features = count_param(p, "features", 16);
    const auto hidden = count_param(p, "hidden", 4);
    d.features = random_features(n, features, count_param(p, "nnz", 4), rng);
    d.mixing = Eigen::MatrixXd(hidden, features);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Eigen::Index i = 0; i < d.mixing.size(); ++i) d.mixing.data()[i] = u(rng);
    d.top_weights = uniform_vector(hidden, 0.5, 1.5, rng);
    d.inner = Concave::sqrt();
    d.outer = Concave::sqrt();
    return make_spec(std::move(d));
  }
  if (kind == "mixture") {
    MixtureSpec m;
    m.components.emplace_back(
        1.0, make_spec(FacilityLocationData{
                 unit_vector_similarity(n, count_param(p, "dim", 16), rng)}));
    m.components.emplace_back(
        0.5, make_spec(FeatureBasedData{
                 random_features(n, count_param(p, "features", 64),
                                 count_param(p, "nnz", 4), rng),
                 Concave::sqrt()}));
    return make_spec(std::move(m));
  }
  throw InputError("synthetic: unknown kind '" + kind + "'");
}

}  // namespace submemo
