// Copyright 2026 The ewfslab Authors
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

#ifndef EWFSLAB_TESTS_ORACLES_BRANCH_SEARCH_HPP
#define EWFSLAB_TESTS_ORACLES_BRANCH_SEARCH_HPP

#include <Eigen/Dense>
#include <optional>

namespace ewfslab::oracles {

/// Exhaustive minimum weighted cost of a circuit over {X, Y, Z, S} on any qubit
/// (cost 1) and X (x) X on any pair (cost 2) that meets the interference or the
/// distinguishability criterion at level delta for the pair (psi0, psi1).
/// Returns nullopt when nothing within `max_cost` qualifies.
std::optional<int> min_interference_cost(const Eigen::VectorXcd& psi0, const Eigen::VectorXcd& psi1,
                                         double delta, int max_cost);
std::optional<int> min_distinguishability_cost(const Eigen::VectorXcd& psi0,
                                               const Eigen::VectorXcd& psi1, double delta,
                                               int max_cost);

}  // namespace ewfslab::oracles

#endif
