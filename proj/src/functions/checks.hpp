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

// Input validation shared by the function factories.

#ifndef SUBMEMO_SRC_FUNCTIONS_CHECKS_HPP_
#define SUBMEMO_SRC_FUNCTIONS_CHECKS_HPP_

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "submemo/core.hpp"

namespace submemo::detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& m,
                    const std::string& name) {
  require(m.allFinite(), name + ": entries must be finite");
}

template <typename Derived>
void require_non_negative(const Eigen::DenseBase<Derived>& m,
                          const std::string& name) {
  require_finite(m, name);
  require((m.derived().array() >= 0.0).all(),
          name + ": entries must be non-negative");
}

inline void require_square(const Eigen::MatrixXd& m, const std::string& name) {
  require(m.rows() >= 1 && m.rows() == m.cols(),
          name + ": matrix must be square and non-empty");
}

inline void require_symmetric(const Eigen::MatrixXd& m,
                              const std::string& name) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      require(approx_equal(m(i, j), m(j, i)),
              name + ": matrix must be symmetric");
    }
  }
}

// Every id in range [0, bound) and no id repeated within one list.
inline void require_id_lists(const std::vector<std::vector<std::int32_t>>& lists,
                             std::int32_t bound, const std::string& name) {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(bound), 0);
  for (const auto& list : lists) {
    for (std::int32_t u : list) {
      require(u >= 0 && u < bound, name + ": id " + std::to_string(u) +
                                       " out of range [0, " +
                                       std::to_string(bound) + ")");
      require(!seen[u], name + ": repeated id " + std::to_string(u));
      seen[u] = 1;
    }
    for (std::int32_t u : list) seen[u] = 0;
  }
}

}  // namespace submemo::detail

#endif  // SUBMEMO_SRC_FUNCTIONS_CHECKS_HPP_
