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

// Sums of concave over modular functions: feature based, clustered, the
// two-layer deep submodular form, and plain (signed) modular functions.

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "functions/checks.hpp"
#include "submemo/functions.hpp"

namespace submemo {

double Concave::operator()(double x) const {
  x = std::max(0.0, x);
  switch (kind) {
    case ConcaveKind::kSqrt:
      return std::sqrt(x);
    case ConcaveKind::kLog1p:
      return std::log1p(x);
    case ConcaveKind::kPower:
      return std::pow(x, exponent);
  }
  return 0.0;
}

void Concave::validate() const {
  if (kind == ConcaveKind::kPower) {
    detail::require(exponent > 0.0 && exponent < 1.0,
                    "concave power exponent must lie in (0, 1)");
  }
}

std::string to_string(const Concave& c) {
  switch (c.kind) {
    case ConcaveKind::kSqrt:
      return "sqrt";
    case ConcaveKind::kLog1p:
      return "log1p";
    case ConcaveKind::kPower:
    {
      char buf[32];
      std::snprintf(buf, sizeof buf, "pow:%.17g", c.exponent);
      return buf;
    }
  }
  return "?";
}

Concave parse_concave(const std::string& text) {
  if (text == "sqrt") return Concave::sqrt();
  if (text == "log1p") return Concave::log1p();
  if (text.rfind("pow:", 0) == 0) {
    double p = 0.0;
    try {
      p = std::stod(text.substr(4));
    } catch (const std::exception&) {
      throw InputError("bad concave exponent in '" + text + "'");
    }
    Concave c = Concave::power(p);
    c.validate();
    return c;
  }
  throw InputError("unknown concave function '" + text + "'");
}

namespace {

void require_sparse_non_negative(const SparseMatrix& m,
                                 const std::string& name) {
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      detail::require(std::isfinite(it.value()) && it.value() >= 0.0,
                      name + ": scores must be finite and non-negative");
    }
  }
}

// Statistic: p_X[e] = m_e(X) for every feature e, plus the number of
// members contributing to each feature so that a total returns to exactly
// zero once its last contributor leaves.
class FeatureBased final : public SetFunction {
 public:
  explicit FeatureBased(std::shared_ptr<const FeatureBasedData> data)
      : SetFunction(static_cast<Element>(data->features.cols())),
        data_(std::move(data)),
        totals_(Eigen::VectorXd::Zero(data_->features.rows())),
        counts_(static_cast<std::size_t>(data_->features.rows()), 0) {}

  std::string_view name() const override { return "feature-based"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    Eigen::VectorXd totals = Eigen::VectorXd::Zero(totals_.size());
    for (Element j : x) {
      for (SparseMatrix::InnerIterator it(data_->features, j); it; ++it) {
        totals[it.row()] += it.value();
      }
    }
    const Concave psi = data_->concave;
    return totals.unaryExpr([psi](double v) { return psi(v); }).sum();
  }

  double do_gain_add(Element j) const override {
    const Concave& psi = data_->concave;
    double g = 0.0;
    for (SparseMatrix::InnerIterator it(data_->features, j); it; ++it) {
      const double p = totals_[it.row()];
      g += psi(p + it.value()) - psi(p);
    }
    return g;
  }

  double do_gain_remove(Element j) const override {
    const Concave& psi = data_->concave;
    double g = 0.0;
    for (SparseMatrix::InnerIterator it(data_->features, j); it; ++it) {
      const double p = totals_[it.row()];
      g += psi(p) - psi(drop(it.row(), p, it.value()));
    }
    return g;
  }

  void do_update(Element j) override {
    for (SparseMatrix::InnerIterator it(data_->features, j); it; ++it) {
      totals_[it.row()] += it.value();
      ++counts_[static_cast<std::size_t>(it.row())];
    }
  }

  void do_downdate(Element j) override {
    for (SparseMatrix::InnerIterator it(data_->features, j); it; ++it) {
      double& p = totals_[it.row()];
      p = drop(it.row(), p, it.value());
      --counts_[static_cast<std::size_t>(it.row())];
    }
  }

  void do_rebuild() override {
    totals_.setZero();
    std::fill(counts_.begin(), counts_.end(), 0);
    for (Element j : memo()) do_update(j);
  }

  double do_memo_value() const override {
    const Concave psi = data_->concave;
    return totals_.unaryExpr([psi](double v) { return psi(v); }).sum();
  }

  std::vector<double> statistic_vector() const override {
    return {totals_.data(), totals_.data() + totals_.size()};
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<FeatureBased>(*this);
  }

 private:
  // Total of feature e after removing one contributor of size v.
  double drop(Eigen::Index e, double p, double v) const {
    if (counts_[static_cast<std::size_t>(e)] <= 1) return 0.0;
    return std::max(0.0, p - v);
  }

  std::shared_ptr<const FeatureBasedData> data_;
  Eigen::VectorXd totals_;
  std::vector<std::int32_t> counts_;
};

struct ClusteredConcaveModel {
  std::shared_ptr<const ClusteredConcaveData> data;
  // Per element: (cluster, weight of the element inside that cluster).
  std::vector<std::vector<std::pair<std::int32_t, double>>> memberships;
};

// Statistic: p_X[c] = m_c(X cap C_c). Element e only touches its clusters.
class ClusteredConcave final : public SetFunction {
 public:
  explicit ClusteredConcave(std::shared_ptr<const ClusteredConcaveModel> model)
      : SetFunction(model->data->n),
        model_(std::move(model)),
        totals_(Eigen::VectorXd::Zero(
            static_cast<Eigen::Index>(model_->data->clusters.size()))),
        counts_(model_->data->clusters.size(), 0) {}

  std::string_view name() const override { return "clustered-concave"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    Eigen::VectorXd totals = Eigen::VectorXd::Zero(totals_.size());
    for (Element j : x) {
      for (const auto& [c, w] : model_->memberships[j]) totals[c] += w;
    }
    const Concave psi = model_->data->concave;
    return totals.unaryExpr([psi](double v) { return psi(v); }).sum();
  }

  double do_gain_add(Element j) const override {
    const Concave& psi = model_->data->concave;
    double g = 0.0;
    for (const auto& [c, w] : model_->memberships[j]) {
      g += psi(totals_[c] + w) - psi(totals_[c]);
    }
    return g;
  }

  double do_gain_remove(Element j) const override {
    const Concave& psi = model_->data->concave;
    double g = 0.0;
    for (const auto& [c, w] : model_->memberships[j]) {
      g += psi(totals_[c]) - psi(drop(c, w));
    }
    return g;
  }

  void do_update(Element j) override {
    for (const auto& [c, w] : model_->memberships[j]) {
      totals_[c] += w;
      ++counts_[static_cast<std::size_t>(c)];
    }
  }

  void do_downdate(Element j) override {
    for (const auto& [c, w] : model_->memberships[j]) {
      totals_[c] = drop(c, w);
      --counts_[static_cast<std::size_t>(c)];
    }
  }

  void do_rebuild() override {
    totals_.setZero();
    std::fill(counts_.begin(), counts_.end(), 0);
    for (Element j : memo()) do_update(j);
  }

  double do_memo_value() const override {
    const Concave psi = model_->data->concave;
    return totals_.unaryExpr([psi](double v) { return psi(v); }).sum();
  }

  std::vector<double> statistic_vector() const override {
    return {totals_.data(), totals_.data() + totals_.size()};
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<ClusteredConcave>(*this);
  }

 private:
  double drop(std::int32_t c, double w) const {
    if (counts_[static_cast<std::size_t>(c)] <= 1) return 0.0;
    return std::max(0.0, totals_[c] - w);
  }

  std::shared_ptr<const ClusteredConcaveModel> model_;
  Eigen::VectorXd totals_;
  std::vector<std::int32_t> counts_;
};

// Statistic: p_X[b] = m_b(X) for every inner feature b, plus the cached
// hidden activations h_a = sum_b mixing_ab * inner(p_X[b]).
class DeepSubmodular final : public SetFunction {
 public:
  explicit DeepSubmodular(std::shared_ptr<const DeepSubmodularData> data)
      : SetFunction(static_cast<Element>(data->features.cols())),
        data_(std::move(data)),
        totals_(Eigen::VectorXd::Zero(data_->features.rows())),
        hidden_(Eigen::VectorXd::Zero(data_->mixing.rows())),
        counts_(static_cast<std::size_t>(data_->features.rows()), 0),
        support_(static_cast<std::size_t>(data_->mixing.rows()), 0) {}

  std::string_view name() const override { return "deep-submodular"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    Eigen::VectorXd totals = Eigen::VectorXd::Zero(totals_.size());
    for (Element j : x) {
      for (SparseMatrix::InnerIterator it(data_->features, j); it; ++it) {
        totals[it.row()] += it.value();
      }
    }
    const Concave inner = data_->inner;
    const Eigen::VectorXd hidden =
        data_->mixing * totals.unaryExpr([inner](double v) { return inner(v); });
    return outer_sum(hidden);
  }

  double do_gain_add(Element j) const override {
    return outer_sum(next_hidden(j, +1.0)) - outer_sum(hidden_);
  }

  double do_gain_remove(Element j) const override {
    return outer_sum(hidden_) - outer_sum(next_hidden(j, -1.0));
  }

  void do_update(Element j) override { apply(j, +1.0); }
  void do_downdate(Element j) override { apply(j, -1.0); }

  void do_rebuild() override {
    totals_.setZero();
    std::fill(counts_.begin(), counts_.end(), 0);
    for (Element j : memo()) {
      for (SparseMatrix::InnerIterator it(data_->features, j); it; ++it) {
        totals_[it.row()] += it.value();
        ++counts_[static_cast<std::size_t>(it.row())];
      }
    }
    const Concave inner = data_->inner;
    hidden_ = data_->mixing *
              totals_.unaryExpr([inner](double v) { return inner(v); });
    std::fill(support_.begin(), support_.end(), 0);
    for (Eigen::Index b = 0; b < totals_.size(); ++b) {
      if (counts_[static_cast<std::size_t>(b)] > 0) shift_support(b, +1);
    }
  }

  double do_memo_value() const override { return outer_sum(hidden_); }

  std::vector<double> statistic_vector() const override {
    std::vector<double> out(totals_.data(), totals_.data() + totals_.size());
    out.insert(out.end(), hidden_.data(), hidden_.data() + hidden_.size());
    return out;
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<DeepSubmodular>(*this);
  }

 private:
  double outer_sum(const Eigen::VectorXd& hidden) const {
    const Concave outer = data_->outer;
    return data_->top_weights.dot(
        hidden.unaryExpr([outer](double v) { return outer(v); }));
  }

  // Change of the hidden layer when j is added (+1) or removed (-1).
  Eigen::VectorXd hidden_delta(Element j, double sign) const {
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(hidden_.size());
    const Concave& inner = data_->inner;
    for (SparseMatrix::InnerIterator it(data_->features, j); it; ++it) {
      const double p = totals_[it.row()];
      const double d = inner(moved(it.row(), it.value(), sign)) - inner(p);
      delta += d * data_->mixing.col(it.row());
    }
    return delta;
  }

  // Total of feature b after adding (+1) or removing (-1) a contributor.
  double moved(Eigen::Index b, double v, double sign) const {
    if (sign < 0.0 && counts_[static_cast<std::size_t>(b)] <= 1) return 0.0;
    return std::max(0.0, totals_[b] + sign * v);
  }

  // Hidden layer after the move. A unit left without any contributing
  // feature is exactly zero, not the residue of the running sum.
  Eigen::VectorXd next_hidden(Element j, double sign) const {
    Eigen::VectorXd h = (hidden_ + hidden_delta(j, sign)).cwiseMax(0.0);
    if (sign > 0.0) return h;
    std::vector<std::int32_t> support = support_;
    for (SparseMatrix::InnerIterator it(data_->features, j); it; ++it) {
      if (counts_[static_cast<std::size_t>(it.row())] != 1) continue;
      for (Eigen::Index a = 0; a < h.size(); ++a) {
        if (data_->mixing(a, it.row()) > 0.0) {
          --support[static_cast<std::size_t>(a)];
        }
      }
    }
    for (Eigen::Index a = 0; a < h.size(); ++a) {
      if (support[static_cast<std::size_t>(a)] == 0) h[a] = 0.0;
    }
    return h;
  }

  void shift_support(Eigen::Index b, int step) {
    for (Eigen::Index a = 0; a < data_->mixing.rows(); ++a) {
      if (data_->mixing(a, b) > 0.0) support_[static_cast<std::size_t>(a)] += step;
    }
  }

  void apply(Element j, double sign) {
    hidden_ = next_hidden(j, sign);
    for (SparseMatrix::InnerIterator it(data_->features, j); it; ++it) {
      totals_[it.row()] = moved(it.row(), it.value(), sign);
      auto& count = counts_[static_cast<std::size_t>(it.row())];
      if (sign > 0.0) {
        if (count++ == 0) shift_support(it.row(), +1);
      } else {
        if (--count == 0) shift_support(it.row(), -1);
      }
    }
  }

  std::shared_ptr<const DeepSubmodularData> data_;
  Eigen::VectorXd totals_;
  Eigen::VectorXd hidden_;
  std::vector<std::int32_t> counts_;   // contributors per inner feature
  std::vector<std::int32_t> support_;  // live features per hidden unit
};

// Statistic: the running sum of the weights in X.
class Modular final : public SetFunction {
 public:
  explicit Modular(std::shared_ptr<const ModularData> data)
      : SetFunction(static_cast<Element>(data->weights.size())),
        data_(std::move(data)) {}

  std::string_view name() const override { return "modular"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    double v = 0.0;
    for (Element j : x) v += data_->weights[j];
    return v;
  }
  double do_gain_add(Element j) const override { return data_->weights[j]; }
  double do_gain_remove(Element j) const override {
    return data_->weights[j];
  }
  void do_update(Element j) override { sum_ += data_->weights[j]; }
  void do_downdate(Element j) override { sum_ -= data_->weights[j]; }
  void do_rebuild() override { sum_ = do_evaluate(memo().members()); }
  double do_memo_value() const override { return sum_; }
  std::vector<double> statistic_vector() const override { return {sum_}; }
  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<Modular>(*this);
  }

 private:
  std::shared_ptr<const ModularData> data_;
  double sum_ = 0.0;
};

}  // namespace

std::unique_ptr<SetFunction> make_feature_based(
    std::shared_ptr<const FeatureBasedData> data) {
  detail::require(data != nullptr, "feature based: null data");
  detail::require(data->features.cols() >= 1,
                  "feature based: ground set must be non-empty");
  require_sparse_non_negative(data->features, "feature based");
  data->concave.validate();
  return std::make_unique<FeatureBased>(std::move(data));
}

std::unique_ptr<SetFunction> make_clustered_concave(
    std::shared_ptr<const ClusteredConcaveData> data) {
  detail::require(data != nullptr, "clustered concave: null data");
  detail::require(data->n >= 1, "clustered concave: empty ground set");
  detail::require(data->clusters.size() == data->cluster_weights.size(),
                  "clustered concave: one weight vector per cluster");
  data->concave.validate();
  detail::require_id_lists(data->clusters, data->n, "clustered concave");
  auto model = std::make_shared<ClusteredConcaveModel>();
  model->memberships.resize(static_cast<std::size_t>(data->n));
  for (std::size_t c = 0; c < data->clusters.size(); ++c) {
    const auto& members = data->clusters[c];
    const auto& w = data->cluster_weights[c];
    detail::require(w.size() == static_cast<Eigen::Index>(members.size()),
                    "clustered concave: one weight per cluster member");
    detail::require_non_negative(w, "clustered concave weights");
    for (std::size_t i = 0; i < members.size(); ++i) {
      model->memberships[members[i]].emplace_back(
          static_cast<std::int32_t>(c), w[static_cast<Eigen::Index>(i)]);
    }
  }
  model->data = std::move(data);
  return std::make_unique<ClusteredConcave>(std::move(model));
}

std::unique_ptr<SetFunction> make_deep_submodular(
    std::shared_ptr<const DeepSubmodularData> data) {
  detail::require(data != nullptr, "deep submodular: null data");
  detail::require(data->features.cols() >= 1,
                  "deep submodular: ground set must be non-empty");
  require_sparse_non_negative(data->features, "deep submodular features");
  detail::require(data->mixing.cols() == data->features.rows(),
                  "deep submodular: mixing must be |F1| x |F2|");
  detail::require(data->top_weights.size() == data->mixing.rows(),
                  "deep submodular: one top weight per hidden unit");
  detail::require_non_negative(data->mixing, "deep submodular mixing");
  detail::require_non_negative(data->top_weights,
                               "deep submodular top weights");
  data->inner.validate();
  data->outer.validate();
  return std::make_unique<DeepSubmodular>(std::move(data));
}

std::unique_ptr<SetFunction> make_modular(
    std::shared_ptr<const ModularData> data) {
  detail::require(data != nullptr, "modular: null data");
  detail::require(data->weights.size() >= 1, "modular: empty ground set");
  detail::require_finite(data->weights, "modular weights");
  return std::make_unique<Modular>(std::move(data));
}

std::unique_ptr<SetFunction> make_modular(Eigen::VectorXd weights) {
  return make_modular(
      std::make_shared<const ModularData>(ModularData{std::move(weights)}));
}

}  // namespace submemo
