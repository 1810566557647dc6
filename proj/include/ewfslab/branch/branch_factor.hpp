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

#ifndef EWFSLAB_BRANCH_BRANCH_FACTOR_HPP
#define EWFSLAB_BRANCH_BRANCH_FACTOR_HPP

#include <optional>
#include <string>
#include <string_view>

#include "ewfslab/ewfs/friend.hpp"

namespace ewfslab::branch {

/// How a reported complexity relates to the true value.
enum class BoundFlag { kExact, kLowerBound, kUpperBound, kAsymptotic };

std::string_view to_string(BoundFlag flag);
BoundFlag parse_bound_flag(std::string_view s);

struct BoundedValue {
    double value = 0.0;
    BoundFlag flag = BoundFlag::kExact;
};

/// Flag of C_I - C_D given the flags of its operands.
///   exact - exact = exact; anything asymptotic is asymptotic; any other bound
///   combination (e.g. lower - upper) is a lower bound.
BoundFlag difference_flag(BoundFlag interference, BoundFlag distinguishability);

/// Interference complexity C_I, distinguishability complexity C_D and branch
/// factor B = C_I - C_D of a friend's two pointer states, at delta = 1.
struct BranchFactorReport {
    BoundedValue interference;
    BoundedValue distinguishability;
    BoundedValue branch_factor;
    double delta = 1.0;
    std::optional<ewfs::FriendKind> friend_kind;
    std::string note;
};

/// Ghz(n):             C_I = n, C_D = 1, B = n - 1 (exact).
/// RandomUnitary(n):   C_I >= 4^n/9 - n/3 - 1/9, C_D <= n, B >= 4^n/9 - 4n/3 - 1/9;
///                     negative bounds clamp to 0 and keep the lower_bound flag.
/// Dicke(n, k):        C_I ~ k n, C_D ~ 1, B ~ k n - 1, all asymptotic with unit constants.
BranchFactorReport branch_factor(const ewfs::FriendKind& kind);

/// Two states prepared by random circuits of depth d0 and d1 on n qubits:
/// C_I ~ (d0 + d1) n and C_D ~ min(d0, d1) n, asymptotic with unit constants.
BranchFactorReport two_random_circuit_bounds(int n, int d0, int d1);

}  // namespace ewfslab::branch

#endif
