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

// Dispersion functions over a distance matrix. None of the three is
// submodular in general; they are kept here because the algorithms in this
// library still apply to them as heuristics.

#include <algorithm>
#include <cmath>
#include <limits>

#include "functions/checks.hpp"
#include "submemo/functions.hpp"

namespace submemo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Element kNone = -1;

double min_pair(const Eigen::MatrixXd& d, std::span<const Element> x,
                Element skip) {
  double best = kInf;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] == skip) continue;
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      if (x[b] == skip) continue;
      best = std::min(best, d(x[a], x[b]));
    }
  }
  return best;
}

// Statistic: the minimum in-set pairwise distance (infinite when |X| < 2).
// A scalar minimum cannot be downdated, so removal recomputes it in
// O(|X|^2).
class DispersionMin final : public SetFunction {
 public:
  explicit DispersionMin(std::shared_ptr<const DispersionData> data)
      : SetFunction(static_cast<Element>(data->distance.rows())),
        data_(std::move(data)) {}

  std::string_view name() const override { return "dispersion-min"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    return value_of(min_pair(data_->distance, x, kNone));
  }

  double do_gain_add(Element j) const override {
    if (memo().empty()) return 0.0;
    return value_of(std::min(min_, nearest(j))) - value_of(min_);
  }

  double do_gain_remove(Element j) const override {
    return value_of(min_) -
           value_of(min_pair(data_->distance, memo().members(), j));
  }

  void do_update(Element j) override { min_ = std::min(min_, nearest(j)); }

  void do_downdate(Element j) override {
    min_ = min_pair(data_->distance, memo().members(), j);
  }

  void do_rebuild() override {
    min_ = min_pair(data_->distance, memo().members(), kNone);
  }

  double do_memo_value() const override { return value_of(min_); }

  std::vector<double> statistic_vector() const override {
    return {value_of(min_)};
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<DispersionMin>(*this);
  }

 private:
  static double value_of(double m) { return std::isinf(m) ? 0.0 : m; }

  double nearest(Element j) const {
    double best = kInf;
    for (Element l : memo()) best = std::min(best, data_->distance(j, l));
    return best;
  }

  std::shared_ptr<const DispersionData> data_;
  double min_ = kInf;
};

// Statistic: r[l] = sum_{k in X} d_kl for l in X.
class DispersionSum final : public SetFunction {
 public:
  explicit DispersionSum(std::shared_ptr<const DispersionData> data)
      : SetFunction(static_cast<Element>(data->distance.rows())),
        data_(std::move(data)),
        row_sums_(Eigen::VectorXd::Zero(data_->distance.rows())) {}

  std::string_view name() const override { return "dispersion-sum"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    double total = 0.0;
    for (Element k : x) {
      for (Element l : x) total += data_->distance(k, l);
    }
    return total;
  }

  double do_gain_add(Element j) const override {
    double g = 0.0;
    for (Element k : memo()) g += data_->distance(j, k);
    return 2.0 * g;
  }

  double do_gain_remove(Element j) const override {
    return 2.0 * row_sums_[j];
  }

  void do_update(Element j) override {
    double own = 0.0;
    for (Element l : memo()) {
      row_sums_[l] += data_->distance(j, l);
      own += data_->distance(l, j);
    }
    row_sums_[j] = own;
  }

  void do_downdate(Element j) override {
    for (Element l : memo()) {
      if (l != j) row_sums_[l] -= data_->distance(j, l);
    }
    row_sums_[j] = 0.0;
  }

  void do_rebuild() override {
    row_sums_.setZero();
    for (Element l : memo()) {
      for (Element k : memo()) row_sums_[l] += data_->distance(k, l);
    }
  }

  double do_memo_value() const override {
    double total = 0.0;
    for (Element l : memo()) total += row_sums_[l];
    return total;
  }

  std::vector<double> statistic_vector() const override {
    std::vector<double> out;
    out.reserve(memo().size());
    for (Element l : memo()) out.push_back(row_sums_[l]);
    return out;
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<DispersionSum>(*this);
  }

 private:
  std::shared_ptr<const DispersionData> data_;
  Eigen::VectorXd row_sums_;
};

// Statistic per member k: the two smallest distances to other members, with
// their holders. A member without neighbours contributes 0.
class DispersionMinSum final : public SetFunction {
 public:
  explicit DispersionMinSum(std::shared_ptr<const DispersionData> data)
      : SetFunction(static_cast<Element>(data->distance.rows())),
        data_(std::move(data)) {
    const auto n = static_cast<std::size_t>(ground_size());
    near_.assign(n, {});
  }

  std::string_view name() const override { return "dispersion-min-sum"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    if (x.size() < 2) return 0.0;
    double total = 0.0;
    for (Element k : x) {
      double best = kInf;
      for (Element l : x) {
        if (l != k) best = std::min(best, data_->distance(k, l));
      }
      total += best;
    }
    return total;
  }

  double do_gain_add(Element j) const override {
    if (memo().empty()) return 0.0;
    double g = 0.0;
    double own = kInf;
    for (Element k : memo()) {
      const double d = data_->distance(k, j);
      own = std::min(own, d);
      const Near& nk = near_[k];
      g += std::min(nk.first, d) - term(nk);
    }
    return g + own;
  }

  double do_gain_remove(Element j) const override {
    double g = term(near_[j]);
    for (Element k : memo()) {
      if (k == j) continue;
      const Near& nk = near_[k];
      if (nk.first_id == j) {
        g += term(nk) - (nk.second_id == kNone ? 0.0 : nk.second);
      }
    }
    return g;
  }

  void do_update(Element j) override {
    Near own;
    for (Element k : memo()) {
      const double d = data_->distance(k, j);
      push(near_[k], d, j);
      push(own, d, k);
    }
    near_[j] = own;
  }

  void do_downdate(Element j) override {
    for (Element k : memo()) {
      if (k == j) continue;
      Near& nk = near_[k];
      if (nk.first_id == j) {
        nk.first = nk.second;
        nk.first_id = nk.second_id;
        rescan_second(k, j);
      } else if (nk.second_id == j) {
        rescan_second(k, j);
      }
    }
    near_[j] = {};
  }

  void do_rebuild() override {
    std::fill(near_.begin(), near_.end(), Near{});
    for (Element k : memo()) {
      for (Element l : memo()) {
        if (l != k) push(near_[k], data_->distance(k, l), l);
      }
    }
  }

  double do_memo_value() const override {
    double total = 0.0;
    for (Element k : memo()) total += term(near_[k]);
    return total;
  }

  std::vector<double> statistic_vector() const override {
    std::vector<double> out;
    out.reserve(2 * memo().size());
    for (Element k : memo()) {
      const Near& nk = near_[k];
      out.push_back(nk.first_id == kNone ? -1.0 : nk.first);
      out.push_back(nk.second_id == kNone ? -1.0 : nk.second);
    }
    return out;
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<DispersionMinSum>(*this);
  }

 private:
  struct Near {
    double first = kInf;
    Element first_id = kNone;
    double second = kInf;
    Element second_id = kNone;
  };

  static double term(const Near& n) {
    return n.first_id == kNone ? 0.0 : n.first;
  }

  static void push(Near& n, double d, Element id) {
    if (n.first_id == kNone || d < n.first) {
      n.second = n.first;
      n.second_id = n.first_id;
      n.first = d;
      n.first_id = id;
    } else if (n.second_id == kNone || d < n.second) {
      n.second = d;
      n.second_id = id;
    }
  }

  void rescan_second(Element k, Element removed) {
    Near& nk = near_[k];
    nk.second = kInf;
    nk.second_id = kNone;
    for (Element l : memo()) {
      if (l == k || l == removed || l == nk.first_id) continue;
      const double d = data_->distance(k, l);
      if (nk.second_id == kNone || d < nk.second) {
        nk.second = d;
        nk.second_id = l;
      }
    }
  }

  std::shared_ptr<const DispersionData> data_;
  std::vector<Near> near_;
};

}  // namespace

std::unique_ptr<SetFunction> make_dispersion(
    std::shared_ptr<const DispersionData> data) {
  detail::require(data != nullptr, "dispersion: null data");
  const auto& d = data->distance;
  detail::require_square(d, "dispersion");
  detail::require_non_negative(d, "dispersion");
  detail::require_symmetric(d, "dispersion");
  detail::require((d.diagonal().array() == 0.0).all(),
                  "dispersion: diagonal must be zero");
  switch (data->kind) {
    case DispersionKind::kMin:
      return std::make_unique<DispersionMin>(std::move(data));
    case DispersionKind::kSum:
      return std::make_unique<DispersionSum>(std::move(data));
    case DispersionKind::kMinSum:
      return std::make_unique<DispersionMinSum>(std::move(data));
  }
  throw InputError("dispersion: unknown kind");
}

}  // namespace submemo
