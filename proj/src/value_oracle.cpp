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

#include <optional>
#include <string>

#include "submemo/core.hpp"

namespace submemo {
namespace {

// Value-oracle baseline. The only "statistic" is f(X), cached lazily: a
// mutation invalidates it unless the mutation repeats the last probed set,
// in which case the probe's value is reused. Chains such as the extreme
// point sweep therefore cost one evaluation per element.
class ValueOracleFunction final : public SetFunction {
 public:
  explicit ValueOracleFunction(std::unique_ptr<SetFunction> inner)
      : SetFunction(inner->ground_size(), CostModel::kValueOracle),
        inner_(std::move(inner)),
        name_("vo:" + std::string(inner_->name())),
        cached_(0.0) {
    if (!inner_->memo().empty()) {
      set_memo(inner_->memo());
      reset_counters();
    }
  }

  ValueOracleFunction(const ValueOracleFunction& o)
      : SetFunction(o),
        inner_(o.inner_->clone_detached()),
        name_(o.name_),
        cached_(o.cached_) {}

  std::string_view name() const override { return name_; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    return inner_->evaluate(x);
  }

  double do_gain_add(Element j) const override {
    const double base = cached_value();
    scratch_.assign(memo().begin(), memo().end());
    scratch_.push_back(j);
    const double v = evaluate(std::span<const Element>(scratch_));
    probe_ = Probe{j, true, v};
    return v - base;
  }

  double do_gain_remove(Element j) const override {
    const double base = cached_value();
    scratch_.clear();
    for (Element e : memo()) {
      if (e != j) scratch_.push_back(e);
    }
    const double v = evaluate(std::span<const Element>(scratch_));
    probe_ = Probe{j, false, v};
    return base - v;
  }

  void do_update(Element j) override { adopt_probe(j, true); }
  void do_downdate(Element j) override { adopt_probe(j, false); }

  void do_rebuild() override {
    probe_.reset();
    if (memo().empty()) {
      cached_ = 0.0;
    } else {
      cached_ = evaluate(memo());
    }
  }

  double do_memo_value() const override { return cached_value(); }

  std::vector<double> statistic_vector() const override {
    return {cached_value()};
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<ValueOracleFunction>(*this);
  }

 private:
  struct Probe {
    Element element;
    bool added;
    double value;
  };

  double cached_value() const {
    if (!cached_) cached_ = evaluate(memo());
    return *cached_;
  }

  void adopt_probe(Element j, bool added) {
    if (probe_ && probe_->element == j && probe_->added == added) {
      cached_ = probe_->value;
    } else {
      cached_.reset();
    }
    probe_.reset();
  }

  std::unique_ptr<SetFunction> inner_;
  std::string name_;
  mutable std::optional<double> cached_;
  mutable std::optional<Probe> probe_;
  mutable std::vector<Element> scratch_;
};

}  // namespace

std::unique_ptr<SetFunction> wrap_value_oracle(
    std::unique_ptr<SetFunction> inner) {
  if (!inner) throw InputError("wrap_value_oracle: null function");
  return std::make_unique<ValueOracleFunction>(std::move(inner));
}

}  // namespace submemo
