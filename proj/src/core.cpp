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

#include "submemo/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace submemo {

bool approx_equal(double a, double b, double rel, double abs) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs;
}

// ---------------------------------------------------------------- Subset

Subset::Subset(Element n) : n_(n), mask_(static_cast<std::size_t>(n), 0) {
  if (n < 0) throw InputError("ground set size must be non-negative");
}

Subset::Subset(Element n, std::span<const Element> members) : Subset(n) {
  members_.reserve(members.size());
  for (Element j : members) insert(j);
}

Subset::Subset(Element n, std::initializer_list<Element> members)
    : Subset(n, std::span<const Element>(members.begin(), members.size())) {}

Subset Subset::full(Element n) {
  Subset s(n);
  s.members_.resize(static_cast<std::size_t>(n));
  for (Element j = 0; j < n; ++j) s.members_[j] = j;
  std::fill(s.mask_.begin(), s.mask_.end(), 1);
  return s;
}

void Subset::check_range(Element j) const {
  if (j < 0 || j >= n_) {
    throw InputError("element " + std::to_string(j) +
                     " outside ground set of size " + std::to_string(n_));
  }
}

bool Subset::contains(Element j) const {
  check_range(j);
  return mask_[j] != 0;
}

void Subset::insert(Element j) {
  check_range(j);
  if (mask_[j]) {
    throw InputError("duplicate element " + std::to_string(j));
  }
  mask_[j] = 1;
  members_.push_back(j);
}

void Subset::erase(Element j) {
  check_range(j);
  if (!mask_[j]) {
    throw InputError("element " + std::to_string(j) + " not in subset");
  }
  mask_[j] = 0;
  // Most removals in the algorithms hit recently added elements.
  auto it = std::find(members_.rbegin(), members_.rend(), j);
  members_.erase(std::next(it).base());
}

void Subset::clear() {
  for (Element j : members_) mask_[j] = 0;
  members_.clear();
}

std::ptrdiff_t Subset::position(Element j) const {
  if (!contains(j)) return -1;
  return std::find(members_.begin(), members_.end(), j) - members_.begin();
}

Subset Subset::complement() const {
  Subset c(n_);
  for (Element j = 0; j < n_; ++j) {
    if (!mask_[j]) c.insert(j);
  }
  return c;
}

std::vector<Element> Subset::sorted() const {
  std::vector<Element> out(members_);
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const Subset& a, const Subset& b) {
  return a.n_ == b.n_ && a.mask_ == b.mask_;
}

std::string to_string(const Subset& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (Element j : s.sorted()) {
    if (!first) os << ',';
    os << j;
    first = false;
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------- EvalCounters

EvalCounters& EvalCounters::operator+=(const EvalCounters& o) {
  oracle_evals += o.oracle_evals;
  gain_evals += o.gain_evals;
  memo_updates += o.memo_updates;
  memo_rebuilds += o.memo_rebuilds;
  return *this;
}

EvalCounters operator-(const EvalCounters& a, const EvalCounters& b) {
  return {a.oracle_evals - b.oracle_evals, a.gain_evals - b.gain_evals,
          a.memo_updates - b.memo_updates, a.memo_rebuilds - b.memo_rebuilds};
}

// ------------------------------------------------------- ModularFunction

double ModularFunction::operator()(std::span<const Element> y) const {
  double v = offset;
  for (Element j : y) {
    if (j < 0 || j >= weights.size()) {
      throw InputError("element out of range in modular evaluation");
    }
    v += weights[j];
  }
  return v;
}

// ----------------------------------------------------------- SetFunction

SetFunction::SetFunction(Element n, CostModel model)
    : n_(n), model_(model), memo_(n) {
  if (n < 1) throw InputError("ground set must contain at least one element");
}

SetFunction::SetFunction(const SetFunction& other)
    : n_(other.n_), model_(other.model_), memo_(other.memo_) {}

void SetFunction::check_element(Element j) const {
  if (j < 0 || j >= n_) {
    throw InputError("element " + std::to_string(j) +
                     " outside ground set of size " + std::to_string(n_));
  }
}

void SetFunction::check_distinct(std::span<const Element> x) const {
  if (scratch_.size() != static_cast<std::size_t>(n_)) {
    scratch_.assign(static_cast<std::size_t>(n_), 0);
  }
  std::size_t i = 0;
  bool ok = true;
  for (; i < x.size(); ++i) {
    Element j = x[i];
    if (j < 0 || j >= n_ || scratch_[j]) {
      ok = false;
      break;
    }
    scratch_[j] = 1;
  }
  for (std::size_t r = 0; r < i; ++r) scratch_[x[r]] = 0;
  if (!ok) {
    Element j = x[i];
    check_element(j);
    throw InputError("duplicate element " + std::to_string(j));
  }
}

double SetFunction::evaluate(std::span<const Element> x) const {
  check_distinct(x);
  ++counters_.oracle_evals;
  return do_evaluate(x);
}

double SetFunction::evaluate(const Subset& x) const {
  if (x.ground_size() != n_) {
    throw InputError("subset ground size does not match function");
  }
  ++counters_.oracle_evals;
  return do_evaluate(x.members());
}

double SetFunction::gain_add(Element j) const {
  check_element(j);
  if (memo_.contains(j)) {
    throw PreconditionError("gain_add: element " + std::to_string(j) +
                            " already in memoized set");
  }
  if (model_ == CostModel::kPrecomputed) ++counters_.gain_evals;
  return do_gain_add(j);
}

double SetFunction::gain_remove(Element j) const {
  check_element(j);
  if (!memo_.contains(j)) {
    throw PreconditionError("gain_remove: element " + std::to_string(j) +
                            " not in memoized set");
  }
  if (model_ == CostModel::kPrecomputed) ++counters_.gain_evals;
  return do_gain_remove(j);
}

void SetFunction::update(Element j) {
  check_element(j);
  if (memo_.contains(j)) {
    throw PreconditionError("update: element " + std::to_string(j) +
                            " already in memoized set");
  }
  ++counters_.memo_updates;
  do_update(j);
  memo_.insert(j);
}

void SetFunction::downdate(Element j) {
  check_element(j);
  if (!memo_.contains(j)) {
    throw PreconditionError("downdate: element " + std::to_string(j) +
                            " not in memoized set");
  }
  ++counters_.memo_updates;
  do_downdate(j);
  memo_.erase(j);
}

void SetFunction::set_memo(std::span<const Element> x) {
  check_distinct(x);
  ++counters_.memo_rebuilds;
  memo_.clear();
  for (Element j : x) memo_.insert(j);
  do_rebuild();
}

double SetFunction::memo_value() const { return do_memo_value(); }

std::unique_ptr<SetFunction> SetFunction::clone_detached() const {
  return do_clone();
}

StatisticReport SetFunction::verify_statistic() const {
  std::unique_ptr<SetFunction> fresh = do_clone();
  fresh->set_memo(memo_.members());
  const std::vector<double> live = statistic_vector();
  const std::vector<double> rebuilt = fresh->statistic_vector();
  StatisticReport report;
  report.entries = rebuilt.size();
  if (live.size() != rebuilt.size()) {
    report.max_deviation = std::numeric_limits<double>::infinity();
    return report;
  }
  for (std::size_t i = 0; i < live.size(); ++i) {
    double d = std::abs(live[i] - rebuilt[i]);
    if (std::isnan(d)) d = std::numeric_limits<double>::infinity();
    report.max_deviation = std::max(
        report.max_deviation, d / std::max(1.0, std::abs(rebuilt[i])));
  }
  return report;
}

}  // namespace submemo
