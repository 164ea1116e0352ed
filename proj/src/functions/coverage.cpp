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

#include "functions/checks.hpp"
#include "submemo/functions.hpp"

namespace submemo {
namespace {

void validate_cover(const SetCoverData& d, const std::string& name) {
  detail::require(d.n >= 1, name + ": ground set must be non-empty");
  detail::require(d.universe >= 0, name + ": negative universe size");
  detail::require(d.sets.size() == static_cast<std::size_t>(d.n),
                  name + ": one set per element required");
  detail::require(d.weights.size() == d.universe,
                  name + ": one weight per universe item required");
  detail::require_non_negative(d.weights, name + " weights");
  detail::require_id_lists(d.sets, d.universe, name + " sets");
}

// Coverage counts per universe item. Clustered set cover reuses this with
// per-item weights multiplied by the number of clusters containing the item;
// `clusters_of` additionally tracks the covered weight of every cluster.
struct CoverModel {
  std::shared_ptr<const SetCoverData> cover;
  std::shared_ptr<const ClusteredSetCoverData> clustered;  // may be null
  Eigen::VectorXd effective_weights;
  std::vector<std::vector<std::int32_t>> clusters_of;  // per universe item
  std::size_t cluster_count = 0;
};

class SetCover final : public SetFunction {
 public:
  explicit SetCover(std::shared_ptr<const CoverModel> model)
      : SetFunction(model->cover->n),
        model_(std::move(model)),
        counts_(static_cast<std::size_t>(model_->cover->universe), 0),
        cluster_covered_(Eigen::VectorXd::Zero(
            static_cast<Eigen::Index>(model_->cluster_count))) {}

  std::string_view name() const override {
    return model_->clustered ? "clustered-set-cover" : "set-cover";
  }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    const auto& sets = model_->cover->sets;
    mark_.assign(counts_.size(), 0);
    double total = 0.0;
    for (Element j : x) {
      for (std::int32_t u : sets[j]) {
        if (!mark_[u]) {
          mark_[u] = 1;
          total += model_->effective_weights[u];
        }
      }
    }
    return total;
  }

  double do_gain_add(Element j) const override {
    double g = 0.0;
    for (std::int32_t u : model_->cover->sets[j]) {
      if (counts_[u] == 0) g += model_->effective_weights[u];
    }
    return g;
  }

  double do_gain_remove(Element j) const override {
    double g = 0.0;
    for (std::int32_t u : model_->cover->sets[j]) {
      if (counts_[u] == 1) g += model_->effective_weights[u];
    }
    return g;
  }

  void do_update(Element j) override {
    for (std::int32_t u : model_->cover->sets[j]) {
      if (counts_[u]++ == 0) cover_item(u, +1.0);
    }
  }

  void do_downdate(Element j) override {
    for (std::int32_t u : model_->cover->sets[j]) {
      if (--counts_[u] == 0) cover_item(u, -1.0);
    }
  }

  void do_rebuild() override {
    std::fill(counts_.begin(), counts_.end(), 0);
    cluster_covered_.setZero();
    covered_ = 0.0;
    for (Element j : memo()) do_update(j);
  }

  double do_memo_value() const override { return covered_; }

  std::vector<double> statistic_vector() const override {
    std::vector<double> out(counts_.begin(), counts_.end());
    out.insert(out.end(), cluster_covered_.data(),
               cluster_covered_.data() + cluster_covered_.size());
    return out;
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<SetCover>(*this);
  }

 private:
  void cover_item(std::int32_t u, double sign) {
    covered_ += sign * model_->effective_weights[u];
    if (model_->clustered) {
      const double w = model_->cover->weights[u];
      for (std::int32_t c : model_->clusters_of[u]) {
        cluster_covered_[c] += sign * w;
      }
    }
  }

  std::shared_ptr<const CoverModel> model_;
  std::vector<std::int32_t> counts_;
  Eigen::VectorXd cluster_covered_;
  double covered_ = 0.0;
  mutable std::vector<std::uint8_t> mark_;
};

// Statistic per universe item u: the product of the non-zero factors
// (1 - p_uj) over j in X and the number of zero factors. An entry whose
// product underflowed is recomputed on downdate instead of divided.
class ProbabilisticSetCover final : public SetFunction {
 public:
  explicit ProbabilisticSetCover(
      std::shared_ptr<const ProbabilisticSetCoverData> data)
      : SetFunction(static_cast<Element>(data->probabilities.cols())),
        data_(std::move(data)) {
    clear_statistic();
  }

  std::string_view name() const override { return "probabilistic-set-cover"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    const auto& p = data_->probabilities;
    Eigen::VectorXd miss = Eigen::VectorXd::Ones(p.rows());
    for (Element j : x) {
      miss = miss.cwiseProduct((1.0 - p.col(j).array()).matrix());
    }
    return data_->weights.dot(Eigen::VectorXd::Ones(p.rows()) - miss);
  }

  double do_gain_add(Element j) const override {
    return data_->weights.cwiseProduct(live_).dot(
        data_->probabilities.col(j));
  }

  double do_gain_remove(Element j) const override {
    const auto col = data_->probabilities.col(j);
    double g = 0.0;
    for (Eigen::Index u = 0; u < live_.size(); ++u) {
      const double q = 1.0 - col[u];
      double without = 0.0;
      if (q == 0.0) {
        if (zeros_[u] == 1) without = product_[u];
      } else if (zeros_[u] == 0) {
        without = underflow_[u] ? rescan_product(u, j) : product_[u] / q;
      }
      g += data_->weights[u] * col[u] * without;
    }
    return g;
  }

  void do_update(Element j) override {
    const auto col = data_->probabilities.col(j);
    for (Eigen::Index u = 0; u < live_.size(); ++u) {
      const double q = 1.0 - col[u];
      if (q == 0.0) {
        ++zeros_[u];
      } else {
        product_[u] *= q;
        if (product_[u] == 0.0) underflow_[u] = 1;
      }
      refresh(u);
    }
  }

  void do_downdate(Element j) override {
    const auto col = data_->probabilities.col(j);
    for (Eigen::Index u = 0; u < live_.size(); ++u) {
      const double q = 1.0 - col[u];
      if (q == 0.0) {
        --zeros_[u];
      } else if (underflow_[u]) {
        product_[u] = rescan_product(u, j);
        underflow_[u] = product_[u] == 0.0 ? 1 : 0;
      } else {
        product_[u] = std::min(1.0, product_[u] / q);
      }
      refresh(u);
    }
  }

  void do_rebuild() override {
    clear_statistic();
    for (Element j : memo()) do_update(j);
  }

  double do_memo_value() const override {
    return data_->weights.sum() - data_->weights.dot(live_);
  }

  std::vector<double> statistic_vector() const override {
    return {live_.data(), live_.data() + live_.size()};
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<ProbabilisticSetCover>(*this);
  }

 private:
  void clear_statistic() {
    const Eigen::Index u = data_->probabilities.rows();
    product_ = Eigen::VectorXd::Ones(u);
    live_ = Eigen::VectorXd::Ones(u);
    zeros_.assign(static_cast<std::size_t>(u), 0);
    underflow_.assign(static_cast<std::size_t>(u), 0);
  }

  void refresh(Eigen::Index u) {
    live_[u] = zeros_[u] > 0 ? 0.0 : product_[u];
  }

  // Product of the non-zero factors of item u over X \ {j}, from scratch.
  double rescan_product(Eigen::Index u, Element j) const {
    double prod = 1.0;
    for (Element k : memo()) {
      if (k == j) continue;
      const double q = 1.0 - data_->probabilities(u, k);
      if (q != 0.0) prod *= q;
    }
    return prod;
  }

  std::shared_ptr<const ProbabilisticSetCoverData> data_;
  Eigen::VectorXd product_;
  Eigen::VectorXd live_;
  std::vector<std::int32_t> zeros_;
  std::vector<std::uint8_t> underflow_;
};

}  // namespace

std::unique_ptr<SetFunction> make_set_cover(
    std::shared_ptr<const SetCoverData> data) {
  detail::require(data != nullptr, "set cover: null data");
  validate_cover(*data, "set cover");
  auto model = std::make_shared<CoverModel>();
  model->effective_weights = data->weights;
  model->cover = std::move(data);
  return std::make_unique<SetCover>(std::move(model));
}

std::unique_ptr<SetFunction> make_clustered_set_cover(
    std::shared_ptr<const ClusteredSetCoverData> data) {
  detail::require(data != nullptr, "clustered set cover: null data");
  validate_cover(data->cover, "clustered set cover");
  detail::require_id_lists(data->clusters, data->cover.universe,
                           "clustered set cover clusters");
  auto model = std::make_shared<CoverModel>();
  model->cover = std::shared_ptr<const SetCoverData>(data, &data->cover);
  model->cluster_count = data->clusters.size();
  model->clusters_of.resize(static_cast<std::size_t>(data->cover.universe));
  Eigen::VectorXd multiplicity =
      Eigen::VectorXd::Zero(data->cover.universe);
  for (std::size_t c = 0; c < data->clusters.size(); ++c) {
    for (std::int32_t u : data->clusters[c]) {
      model->clusters_of[u].push_back(static_cast<std::int32_t>(c));
      multiplicity[u] += 1.0;
    }
  }
  model->effective_weights = data->cover.weights.cwiseProduct(multiplicity);
  model->clustered = std::move(data);
  return std::make_unique<SetCover>(std::move(model));
}

std::unique_ptr<SetFunction> make_probabilistic_set_cover(
    std::shared_ptr<const ProbabilisticSetCoverData> data) {
  detail::require(data != nullptr, "probabilistic set cover: null data");
  const auto& p = data->probabilities;
  detail::require(p.cols() >= 1,
                  "probabilistic set cover: ground set must be non-empty");
  detail::require_finite(p, "probabilistic set cover");
  detail::require((p.array() >= 0.0).all() && (p.array() <= 1.0).all(),
                  "probabilistic set cover: probabilities must lie in [0, 1]");
  detail::require(data->weights.size() == p.rows(),
                  "probabilistic set cover: one weight per item required");
  detail::require_non_negative(data->weights,
                               "probabilistic set cover weights");
  return std::make_unique<ProbabilisticSetCover>(std::move(data));
}

}  // namespace submemo
