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

#include "functions/checks.hpp"
#include "submemo/functions.hpp"

namespace submemo {
namespace {

// Statistic: the concatenated component statistics; every memo operation
// fans out to all components.
class Mixture final : public SetFunction {
 public:
  explicit Mixture(std::vector<MixtureComponent> components)
      : SetFunction(components.front().function->ground_size()),
        components_(std::move(components)) {}

  Mixture(const Mixture& other) : SetFunction(other) {
    components_.reserve(other.components_.size());
    for (const auto& c : other.components_) {
      components_.push_back({c.weight, c.function->clone_detached()});
    }
  }

  std::string_view name() const override { return "mixture"; }

 protected:
  double do_evaluate(std::span<const Element> x) const override {
    double v = 0.0;
    for (const auto& c : components_) v += c.weight * c.function->evaluate(x);
    return v;
  }

  double do_gain_add(Element j) const override {
    double g = 0.0;
    for (const auto& c : components_) g += c.weight * c.function->gain_add(j);
    return g;
  }

  double do_gain_remove(Element j) const override {
    double g = 0.0;
    for (const auto& c : components_) {
      g += c.weight * c.function->gain_remove(j);
    }
    return g;
  }

  void do_update(Element j) override {
    for (auto& c : components_) c.function->update(j);
  }

  void do_downdate(Element j) override {
    for (auto& c : components_) c.function->downdate(j);
  }

  void do_rebuild() override {
    for (auto& c : components_) c.function->set_memo(memo());
  }

  double do_memo_value() const override {
    double v = 0.0;
    for (const auto& c : components_) v += c.weight * c.function->memo_value();
    return v;
  }

  std::vector<double> statistic_vector() const override {
    std::vector<double> out;
    for (const auto& c : components_) {
      auto part = c.function->statistic();
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

  std::unique_ptr<SetFunction> do_clone() const override {
    return std::make_unique<Mixture>(*this);
  }

 private:
  std::vector<MixtureComponent> components_;
};

}  // namespace

std::unique_ptr<SetFunction> make_mixture(
    std::vector<MixtureComponent> components) {
  detail::require(!components.empty(), "mixture: no components");
  const Element n = components.front().function
                        ? components.front().function->ground_size()
                        : 0;
  for (auto& c : components) {
    detail::require(c.function != nullptr, "mixture: null component");
    detail::require(c.function->ground_size() == n,
                    "mixture: components must share the ground set");
    detail::require(std::isfinite(c.weight) && c.weight >= 0.0,
                    "mixture: weights must be non-negative");
    if (!c.function->memo().empty()) c.function->set_memo({});
  }
  return std::make_unique<Mixture>(std::move(components));
}

std::unique_ptr<SetFunction> make_function(const FunctionSpec& spec) {
  struct Visitor {
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const FacilityLocationData>& d) const {
      return make_facility_location(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const SaturatedCoverageData>& d) const {
      return make_saturated_coverage(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const GraphCutData>& d) const {
      return make_graph_cut(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const FeatureBasedData>& d) const {
      return make_feature_based(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const SetCoverData>& d) const {
      return make_set_cover(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const ClusteredSetCoverData>& d) const {
      return make_clustered_set_cover(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const ProbabilisticSetCoverData>& d) const {
      return make_probabilistic_set_cover(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const ClusteredConcaveData>& d) const {
      return make_clustered_concave(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const LogDetData>& d) const {
      return make_log_det(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const DispersionData>& d) const {
      return make_dispersion(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const ModularData>& d) const {
      return make_modular(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const DeepSubmodularData>& d) const {
      return make_deep_submodular(d);
    }
    std::unique_ptr<SetFunction> operator()(
        const std::shared_ptr<const MixtureSpec>& d) const {
      detail::require(d != nullptr, "mixture: null spec");
      std::vector<MixtureComponent> parts;
      parts.reserve(d->components.size());
      for (const auto& [w, sub] : d->components) {
        parts.push_back({w, make_function(sub)});
      }
      return make_mixture(std::move(parts));
    }
  };
  return std::visit(Visitor{}, spec);
}

}  // namespace submemo
