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

// Facility location, saturated coverage and graph cut. All three are driven
// by an n x n similarity matrix whose column j describes element j.

#include <algorithm>

#include "functions/checks.hpp"
#include "submemo/functions.hpp"

namespace submemo {
namespace {

constexpr Element kNone = -1;

// Statistic per row i: the largest and second largest s_ij over j in X, with
// their holders. Empty slots hold value 0 and holder kNone.
class FacilityLocation final : public SetFunction {
 public:
  explicit FacilityLocation(std::shared_ptr<const FacilityLocationData> data)
      : SetFunction(static_cast<Element>(data->similarity.rows())),
        data_(std::move(data)) {
    clear_statistic();
  }

  std::string_view name() const override { return "facility-location"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    const auto& s = data_->similarity;
    Eigen::VectorXd best = Eigen::VectorXd::Zero(s.rows());
    for (Element j : x) best = best.cwiseMax(s.col(j));
    return best.sum();
  }

  double do_gain_add(Element k) const override {
    return (data_->similarity.col(k) - best_).cwiseMax(0.0).sum();
  }

  double do_gain_remove(Element k) const override {
    double loss = 0.0;
    for (Eigen::Index i = 0; i < best_.size(); ++i) {
      if (best_id_[i] == k) loss += best_[i] - second_[i];
    }
    return loss;
  }

  void do_update(Element k) override {
    const auto col = data_->similarity.col(k);
    for (Eigen::Index i = 0; i < best_.size(); ++i) insert(i, col[i], k);
  }

  void do_downdate(Element k) override {
    for (Eigen::Index i = 0; i < best_.size(); ++i) {
      if (best_id_[i] == k) {
        best_[i] = second_[i];
        best_id_[i] = second_id_[i];
        rescan_second(i, k);
      } else if (second_id_[i] == k) {
        rescan_second(i, k);
      }
    }
  }

  void do_rebuild() override {
    clear_statistic();
    const auto& s = data_->similarity;
    for (Element k : memo()) {
      for (Eigen::Index i = 0; i < best_.size(); ++i) insert(i, s(i, k), k);
    }
  }

  double do_memo_value() const override { return best_.sum(); }

  std::vector<double> statistic_vector() const override {
    std::vector<double> out(best_.data(), best_.data() + best_.size());
    out.insert(out.end(), second_.data(), second_.data() + second_.size());
    return out;
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<FacilityLocation>(*this);
  }

 private:
  void clear_statistic() {
    const Eigen::Index n = data_->similarity.rows();
    best_ = Eigen::VectorXd::Zero(n);
    second_ = Eigen::VectorXd::Zero(n);
    best_id_.assign(static_cast<std::size_t>(n), kNone);
    second_id_.assign(static_cast<std::size_t>(n), kNone);
  }

  void insert(Eigen::Index i, double v, Element k) {
    if (best_id_[i] == kNone) {
      best_[i] = v;
      best_id_[i] = k;
    } else if (v > best_[i]) {
      second_[i] = best_[i];
      second_id_[i] = best_id_[i];
      best_[i] = v;
      best_id_[i] = k;
    } else if (second_id_[i] == kNone || v > second_[i]) {
      second_[i] = v;
      second_id_[i] = k;
    }
  }

  // Second largest over X \ {removed}, excluding the current best holder.
  void rescan_second(Eigen::Index i, Element removed) {
    const auto& s = data_->similarity;
    second_[i] = 0.0;
    second_id_[i] = kNone;
    for (Element j : memo()) {
      if (j == removed || j == best_id_[i]) continue;
      if (second_id_[i] == kNone || s(i, j) > second_[i]) {
        second_[i] = s(i, j);
        second_id_[i] = j;
      }
    }
  }

  std::shared_ptr<const FacilityLocationData> data_;
  Eigen::VectorXd best_;
  Eigen::VectorXd second_;
  std::vector<Element> best_id_;
  std::vector<Element> second_id_;
};

// Statistic: p_X[i] = sum_{j in X} s_ij.
class SaturatedCoverage final : public SetFunction {
 public:
  explicit SaturatedCoverage(std::shared_ptr<const SaturatedCoverageData> data)
      : SetFunction(static_cast<Element>(data->similarity.rows())),
        data_(std::move(data)),
        sums_(Eigen::VectorXd::Zero(data_->similarity.rows())) {}

  std::string_view name() const override { return "saturated-coverage"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(sums_.size());
    for (Element j : x) p += data_->similarity.col(j);
    return p.cwiseMin(data_->saturation).sum();
  }

  double do_gain_add(Element k) const override {
    const auto& alpha = data_->saturation;
    return ((sums_ + data_->similarity.col(k)).cwiseMin(alpha) -
            sums_.cwiseMin(alpha))
        .sum();
  }

  double do_gain_remove(Element k) const override {
    const auto& alpha = data_->saturation;
    return (sums_.cwiseMin(alpha) -
            (sums_ - data_->similarity.col(k)).cwiseMin(alpha))
        .sum();
  }

  void do_update(Element k) override { sums_ += data_->similarity.col(k); }
  void do_downdate(Element k) override { sums_ -= data_->similarity.col(k); }

  void do_rebuild() override {
    sums_.setZero();
    for (Element j : memo()) sums_ += data_->similarity.col(j);
  }

  double do_memo_value() const override {
    return sums_.cwiseMin(data_->saturation).sum();
  }

  std::vector<double> statistic_vector() const override {
    return {sums_.data(), sums_.data() + sums_.size()};
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<SaturatedCoverage>(*this);
  }

 private:
  std::shared_ptr<const SaturatedCoverageData> data_;
  Eigen::VectorXd sums_;
};

struct GraphCutModel {
  std::shared_ptr<const GraphCutData> data;
  Eigen::VectorXd column_sums;
};

// Statistic: p_X[i] = sum_{j in X} s_ij, with
//   f(j | X)     = lambda * colsum_j - 2 p_X[j] - s_jj
//   f(j | X - j) = lambda * colsum_j - 2 p_X[j] + s_jj.
class GraphCut final : public SetFunction {
 public:
  explicit GraphCut(std::shared_ptr<const GraphCutModel> model)
      : SetFunction(static_cast<Element>(model->column_sums.size())),
        model_(std::move(model)),
        sums_(Eigen::VectorXd::Zero(model_->column_sums.size())) {}

  std::string_view name() const override { return "graph-cut"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    const auto& s = model_->data->similarity;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(s.rows());
    for (Element j : x) p += s.col(j);
    double internal = 0.0;
    for (Element i : x) internal += p[i];
    return model_->data->lambda * p.sum() - internal;
  }

  double do_gain_add(Element k) const override {
    return model_->data->lambda * model_->column_sums[k] - 2.0 * sums_[k] -
           model_->data->similarity(k, k);
  }

  double do_gain_remove(Element k) const override {
    return model_->data->lambda * model_->column_sums[k] - 2.0 * sums_[k] +
           model_->data->similarity(k, k);
  }

  void do_update(Element k) override {
    sums_ += model_->data->similarity.col(k);
  }
  void do_downdate(Element k) override {
    sums_ -= model_->data->similarity.col(k);
  }

  void do_rebuild() override {
    sums_.setZero();
    for (Element j : memo()) sums_ += model_->data->similarity.col(j);
  }

  double do_memo_value() const override {
    double cover = 0.0;
    double internal = 0.0;
    for (Element j : memo()) {
      cover += model_->column_sums[j];
      internal += sums_[j];
    }
    return model_->data->lambda * cover - internal;
  }

  std::vector<double> statistic_vector() const override {
    return {sums_.data(), sums_.data() + sums_.size()};
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<GraphCut>(*this);
  }

 private:
  std::shared_ptr<const GraphCutModel> model_;
  Eigen::VectorXd sums_;
};

}  // namespace

SaturatedCoverageData SaturatedCoverageData::with_fraction(Eigen::MatrixXd s,
                                                           double fraction) {
  detail::require(std::isfinite(fraction) && fraction >= 0.0,
                  "saturated coverage: fraction must be non-negative");
  SaturatedCoverageData d;
  d.saturation = fraction * s.rowwise().sum();
  d.similarity = std::move(s);
  return d;
}

std::unique_ptr<SetFunction> make_facility_location(
    std::shared_ptr<const FacilityLocationData> data) {
  detail::require(data != nullptr, "facility location: null data");
  detail::require_square(data->similarity, "facility location");
  detail::require_non_negative(data->similarity, "facility location");
  return std::make_unique<FacilityLocation>(std::move(data));
}

std::unique_ptr<SetFunction> make_saturated_coverage(
    std::shared_ptr<const SaturatedCoverageData> data) {
  detail::require(data != nullptr, "saturated coverage: null data");
  detail::require_square(data->similarity, "saturated coverage");
  detail::require_non_negative(data->similarity, "saturated coverage");
  detail::require(data->saturation.size() == data->similarity.rows(),
                  "saturated coverage: one threshold per row required");
  detail::require_non_negative(data->saturation,
                               "saturated coverage thresholds");
  return std::make_unique<SaturatedCoverage>(std::move(data));
}

std::unique_ptr<SetFunction> make_graph_cut(
    std::shared_ptr<const GraphCutData> data) {
  detail::require(data != nullptr, "graph cut: null data");
  detail::require_square(data->similarity, "graph cut");
  detail::require_non_negative(data->similarity, "graph cut");
  detail::require_symmetric(data->similarity, "graph cut");
  detail::require(std::isfinite(data->lambda) && data->lambda >= 0.0,
                  "graph cut: lambda must be non-negative");
  auto model = std::make_shared<GraphCutModel>();
  model->column_sums = data->similarity.colwise().sum().transpose();
  model->data = std::move(data);
  return std::make_unique<GraphCut>(std::move(model));
}

}  // namespace submemo
