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

#ifndef SUBMEMO_CORE_HPP_
#define SUBMEMO_CORE_HPP_

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace submemo {

// Elements of the ground set are the dense ids 0..n-1.
using Element = std::int32_t;

inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

// |a - b| <= rel * max(|a|, |b|) + abs.
bool approx_equal(double a, double b, double rel = kRelTol,
                  double abs = kAbsTol);

// Malformed input: out-of-range ids, dimension mismatches, invalid data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A call made in a memo state where it is not defined, e.g. gain_add(j) with
// j already in the memoized set.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ordered set of distinct elements with an O(1) membership mask. Removal
// keeps the relative order of the remaining members.
class Subset {
 public:
  Subset() = default;
  explicit Subset(Element n);
  Subset(Element n, std::span<const Element> members);
  Subset(Element n, std::initializer_list<Element> members);

  static Subset full(Element n);

  Element ground_size() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Element j) const;

  void insert(Element j);
  void erase(Element j);
  void clear();

  // Position of j in the member order, or -1.
  std::ptrdiff_t position(Element j) const;

  std::span<const Element> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  Subset complement() const;
  std::vector<Element> sorted() const;

  // Set equality, ignoring member order.
  friend bool operator==(const Subset& a, const Subset& b);

 private:
  void check_range(Element j) const;

  Element n_ = 0;
  std::vector<Element> members_;
  std::vector<std::uint8_t> mask_;
};

std::string to_string(const Subset& s);

// Instrumentation separating the value-oracle cost model from the
// precomputed-statistic model.
struct EvalCounters {
  std::int64_t oracle_evals = 0;   // from-scratch f(X)
  std::int64_t gain_evals = 0;     // statistic-based gains
  std::int64_t memo_updates = 0;   // update and downdate
  std::int64_t memo_rebuilds = 0;  // statistic built from scratch

  EvalCounters& operator+=(const EvalCounters& o);
  friend EvalCounters operator+(EvalCounters a, const EvalCounters& b) {
    return a += b;
  }
  friend EvalCounters operator-(const EvalCounters& a, const EvalCounters& b);
  friend bool operator==(const EvalCounters&, const EvalCounters&) = default;
};

// m(Y) = offset + sum_{j in Y} weights[j].
struct ModularFunction {
  double offset = 0.0;
  Eigen::VectorXd weights;

  ModularFunction() = default;
  explicit ModularFunction(Element n) : weights(Eigen::VectorXd::Zero(n)) {}
  ModularFunction(double offset_in, Eigen::VectorXd weights_in)
      : offset(offset_in), weights(std::move(weights_in)) {}

  Element ground_size() const { return static_cast<Element>(weights.size()); }
  double operator()(std::span<const Element> y) const;
  double operator()(const Subset& y) const { return (*this)(y.members()); }
};

enum class CostModel { kPrecomputed, kValueOracle };

struct StatisticReport {
  double max_deviation = 0.0;  // max |live - rebuilt| / max(1, |rebuilt|)
  std::size_t entries = 0;
  bool within(double tol) const { return max_deviation <= tol; }
};

// A submodular (or dispersion) function bound to a live memoized set X and
// its statistic p_X. Gains are read-only; only update, downdate and set_memo
// mutate the memo state. Instances are single-owner: use clone_detached() to
// obtain an independent copy sharing the immutable function data.
class SetFunction {
 public:
  virtual ~SetFunction() = default;
  SetFunction& operator=(const SetFunction&) = delete;

  Element ground_size() const { return n_; }
  CostModel cost_model() const { return model_; }
  virtual std::string_view name() const = 0;

  // From-scratch f(X); never touches the memo state.
  double evaluate(std::span<const Element> x) const;
  double evaluate(const Subset& x) const;
  double evaluate(std::initializer_list<Element> x) const {
    return evaluate(std::span<const Element>(x.begin(), x.size()));
  }

  // f(j | X) for j outside the memoized set X.
  double gain_add(Element j) const;
  // f(j | X \ j) for j inside the memoized set X.
  double gain_remove(Element j) const;

  void update(Element j);
  void downdate(Element j);
  void set_memo(std::span<const Element> x);
  void set_memo(const Subset& x) { set_memo(x.members()); }
  void set_memo(std::initializer_list<Element> x) {
    set_memo(std::span<const Element>(x.begin(), x.size()));
  }

  // f(X) of the memoized set, read off the statistic.
  double memo_value() const;

  const Subset& memo() const { return memo_; }
  const EvalCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = {}; }

  std::unique_ptr<SetFunction> clone_detached() const;

  // Rebuilds the statistic of memo() from scratch on a detached clone and
  // compares it entrywise with the live one.
  StatisticReport verify_statistic() const;

  // Flattened live statistic.
  std::vector<double> statistic() const { return statistic_vector(); }

 protected:
  explicit SetFunction(Element n,
                       CostModel model = CostModel::kPrecomputed);
  // Copies the memo state; counters start at zero.
  SetFunction(const SetFunction& other);

  // Hooks. do_update and do_downdate run before memo() changes, so the
  // implementation sees X, not X +/- j. do_rebuild runs after memo() is set.
  virtual double do_evaluate(std::span<const Element> x) const = 0;
  virtual double do_gain_add(Element j) const = 0;
  virtual double do_gain_remove(Element j) const = 0;
  virtual void do_update(Element j) = 0;
  virtual void do_downdate(Element j) = 0;
  virtual void do_rebuild() = 0;
  virtual double do_memo_value() const = 0;
  virtual std::vector<double> statistic_vector() const = 0;
  virtual std::unique_ptr<SetFunction> do_clone() const = 0;

  EvalCounters& mutable_counters() const { return counters_; }

 private:
  void check_element(Element j) const;
  void check_distinct(std::span<const Element> x) const;

  Element n_;
  CostModel model_;
  Subset memo_;
  mutable EvalCounters counters_;
  mutable std::vector<std::uint8_t> scratch_;
};

// Baseline answering every gain with a fresh evaluation of f(X + j) (or
// f(X - j)) against a cached f(X). Counts oracle evaluations only.
std::unique_ptr<SetFunction> wrap_value_oracle(
    std::unique_ptr<SetFunction> inner);

}  // namespace submemo

#endif  // SUBMEMO_CORE_HPP_
