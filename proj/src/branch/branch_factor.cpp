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

#include "ewfslab/branch/branch_factor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ewfslab::branch {

std::string_view to_string(BoundFlag flag) {
    switch (flag) {
        case BoundFlag::kExact: return "exact";
        case BoundFlag::kLowerBound: return "lower_bound";
        case BoundFlag::kUpperBound: return "upper_bound";
        case BoundFlag::kAsymptotic: return "asymptotic";
    }
    return "?";
}

BoundFlag parse_bound_flag(std::string_view s) {
    for (BoundFlag f : {BoundFlag::kExact, BoundFlag::kLowerBound, BoundFlag::kUpperBound,
                        BoundFlag::kAsymptotic}) {
        if (s == to_string(f)) return f;
    }
    throw std::invalid_argument("unknown bound flag '" + std::string(s) + "'");
}

BoundFlag difference_flag(BoundFlag interference, BoundFlag distinguishability) {
    if (interference == BoundFlag::kAsymptotic || distinguishability == BoundFlag::kAsymptotic) {
        return BoundFlag::kAsymptotic;
    }
    if (interference == BoundFlag::kExact && distinguishability == BoundFlag::kExact) {
        return BoundFlag::kExact;
    }
    return BoundFlag::kLowerBound;
}

BranchFactorReport branch_factor(const ewfs::FriendKind& kind) {
    kind.validate();
    const double n = kind.n;
    BranchFactorReport r;
    r.friend_kind = kind;
    switch (kind.family) {
        case ewfs::FriendFamily::kGhz:
            r.interference = {n, BoundFlag::kExact};
            r.distinguishability = {1.0, BoundFlag::kExact};
            break;
        case ewfs::FriendFamily::kRandomUnitary: {
            const double four_n = std::pow(4.0, n);
            r.interference = {std::max(0.0, four_n / 9.0 - n / 3.0 - 1.0 / 9.0),
                              BoundFlag::kLowerBound};
            r.distinguishability = {n, BoundFlag::kUpperBound};
            r.branch_factor = {std::max(0.0, four_n / 9.0 - 4.0 * n / 3.0 - 1.0 / 9.0),
                               BoundFlag::kLowerBound};
            r.note = "holds with high probability over the Haar measure";
            return r;
        }
        case ewfs::FriendFamily::kDicke:
            r.interference = {static_cast<double>(kind.k) * n, BoundFlag::kAsymptotic};
            r.distinguishability = {1.0, BoundFlag::kAsymptotic};
            r.note = "assumes the O(kn) preparation circuit is also a lower bound";
            break;
    }
    r.branch_factor = {r.interference.value - r.distinguishability.value,
                       difference_flag(r.interference.flag, r.distinguishability.flag)};
    return r;
}

BranchFactorReport two_random_circuit_bounds(int n, int d0, int d1) {
    if (n < 1 || d0 < 0 || d1 < 0) {
        throw std::invalid_argument("two_random_circuit_bounds: need n >= 1 and depths >= 0");
    }
    BranchFactorReport r;
    r.interference = {static_cast<double>(d0 + d1) * n, BoundFlag::kAsymptotic};
    r.distinguishability = {static_cast<double>(std::min(d0, d1)) * n, BoundFlag::kAsymptotic};
    r.branch_factor = {r.interference.value - r.distinguishability.value, BoundFlag::kAsymptotic};
    r.note = "unit constants";
    return r;
}

}  // namespace ewfslab::branch
