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

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "functions/checks.hpp"
#include "submemo/functions.hpp"

namespace submemo {
namespace {

constexpr double kDefaultRidge = 1e-6;

struct LogDetModel {
  std::shared_ptr<const LogDetData> data;
  Eigen::MatrixXd kernel;  // S + ridge * I
  double ridge = 0.0;
};

Eigen::MatrixXd principal(const Eigen::MatrixXd& k,
                          std::span<const Element> x) {
  const auto m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) out(a, b) = k(x[a], x[b]);
  }
  return out;
}

// Statistic: lower-triangular L with L L^T = K_X, rows in memo order.
//   f(j | X)     = log(K_jj - |L^{-1} K_Xj|^2)       (Schur complement)
//   f(j | X - j) = -log((K_X^{-1})_pp) = -log |L^{-1} e_p|^2
// Update appends a row by forward substitution; downdate deletes row p and
// restores triangularity of the trailing block with plane rotations.
class LogDet final : public SetFunction {
 public:
  explicit LogDet(std::shared_ptr<const LogDetModel> model)
      : SetFunction(static_cast<Element>(model->kernel.rows())),
        model_(std::move(model)) {}

  std::string_view name() const override { return "log-det"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    if (x.empty()) return 0.0;
    Eigen::LLT<Eigen::MatrixXd> llt(principal(model_->kernel, x));
    if (llt.info() != Eigen::Success) {
      return -std::numeric_limits<double>::infinity();
    }
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  }

  double do_gain_add(Element j) const override {
    return std::log(schur(j, nullptr));
  }

  double do_gain_remove(Element j) const override {
    const Eigen::Index p = memo().position(j);
    const Eigen::Index m = factor_.rows();
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m - p);
    e[0] = 1.0;
    factor_.bottomRightCorner(m - p, m - p)
        .triangularView<Eigen::Lower>()
        .solveInPlace(e);
    return -std::log(e.squaredNorm());
  }

  void do_update(Element j) override {
    Eigen::VectorXd row;
    const double s = schur(j, &row);
    const Eigen::Index m = factor_.rows();
    factor_.conservativeResize(m + 1, m + 1);
    factor_.col(m).setZero();
    factor_.row(m).head(m) = row.transpose();
    factor_(m, m) = std::sqrt(std::max(s, std::numeric_limits<double>::min()));
  }

  void do_downdate(Element j) override {
    const Eigen::Index p = memo().position(j);
    const Eigen::Index m = factor_.rows();
    Eigen::MatrixXd next(m - 1, m - 1);
    next.topLeftCorner(p, p) = factor_.topLeftCorner(p, p);
    next.topRightCorner(p, m - 1 - p).setZero();
    const Eigen::Index t = m - 1 - p;  // rows below the deleted one
    if (t > 0) {
      next.bottomLeftCorner(t, p) = factor_.bottomLeftCorner(t, p);
      // t x (t + 1) block, lower triangular plus one superdiagonal.
      Eigen::MatrixXd trail = factor_.bottomRightCorner(t, t + 1);
      for (Eigen::Index r = 0; r < t; ++r) {
        const double a = trail(r, r);
        const double b = trail(r, r + 1);
        const double h = std::hypot(a, b);
        if (h == 0.0) continue;
        const double c = a / h;
        const double s = b / h;
        for (Eigen::Index i = r; i < t; ++i) {
          const double u = trail(i, r);
          const double v = trail(i, r + 1);
          trail(i, r) = c * u + s * v;
          trail(i, r + 1) = -s * u + c * v;
        }
      }
      next.bottomRightCorner(t, t) =
          trail.leftCols(t).triangularView<Eigen::Lower>();
    }
    factor_ = std::move(next);
  }

  void do_rebuild() override {
    if (memo().empty()) {
      factor_.resize(0, 0);
      return;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(principal(model_->kernel, memo().members()));
    if (llt.info() != Eigen::Success) {
      throw InputError("log-det: principal submatrix is not positive definite");
    }
    factor_ = llt.matrixL();
  }

  double do_memo_value() const override {
    if (factor_.rows() == 0) return 0.0;
    return 2.0 * factor_.diagonal().array().log().sum();
  }

  std::vector<double> statistic_vector() const override {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < factor_.rows(); ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) out.push_back(factor_(i, j));
    }
    return out;
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<LogDet>(*this);
  }

 private:
  // Schur complement K_jj - |y|^2 with L y = K_Xj; optionally returns y.
  double schur(Element j, Eigen::VectorXd* y_out) const {
    const auto members = memo().members();
    const auto m = static_cast<Eigen::Index>(members.size());
    Eigen::VectorXd y(m);
    for (Eigen::Index a = 0; a < m; ++a) y[a] = model_->kernel(members[a], j);
    if (m > 0) factor_.triangularView<Eigen::Lower>().solveInPlace(y);
    const double s = model_->kernel(j, j) - y.squaredNorm();
    if (y_out) *y_out = std::move(y);
    return s;
  }

  std::shared_ptr<const LogDetModel> model_;
  Eigen::MatrixXd factor_;
};

bool positive_definite(const Eigen::MatrixXd& k) {
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  return llt.info() == Eigen::Success;
}

}  // namespace

std::unique_ptr<SetFunction> make_log_det(
    std::shared_ptr<const LogDetData> data) {
  detail::require(data != nullptr, "log-det: null data");
  detail::require_square(data->kernel, "log-det");
  detail::require_finite(data->kernel, "log-det");
  detail::require_symmetric(data->kernel, "log-det");
  auto model = std::make_shared<LogDetModel>();
  const Eigen::Index n = data->kernel.rows();
  const auto identity = Eigen::MatrixXd::Identity(n, n);
  if (data->ridge) {
    detail::require(std::isfinite(*data->ridge) && *data->ridge >= 0.0,
                    "log-det: ridge must be non-negative");
    model->ridge = *data->ridge;
    model->kernel = data->kernel + model->ridge * identity;
    detail::require(positive_definite(model->kernel),
                    "log-det: S + ridge I is not positive definite");
  } else {
    model->kernel = data->kernel;
    if (!positive_definite(model->kernel)) {
      model->ridge = kDefaultRidge;
      model->kernel = data->kernel + model->ridge * identity;
      detail::require(positive_definite(model->kernel),
                      "log-det: S is not positive semidefinite");
    }
  }
  model->data = std::move(data);
  return std::make_unique<LogDet>(std::move(model));
}

}  // namespace submemo
