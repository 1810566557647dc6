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

#include <gtest/gtest.h>

#include "ewfslab/branch/branch_factor.hpp"
#include "oracles/branch_search.hpp"

using namespace ewfslab;
using branch::BoundFlag;
using ewfs::FriendKind;

TEST(BranchFactor, GhzIsExact) {
    for (int n = 1; n <= 17; ++n) {
        const auto r = branch::branch_factor(FriendKind::ghz(n));
        EXPECT_EQ(r.interference.value, n);
        EXPECT_EQ(r.distinguishability.value, 1);
        EXPECT_EQ(r.branch_factor.value, n - 1);
        EXPECT_EQ(r.branch_factor.flag, BoundFlag::kExact);
        EXPECT_EQ(r.delta, 1.0);
    }
}

TEST(BranchFactor, RandomUnitaryLowerBound) {
    const auto r3 = branch::branch_factor(FriendKind::random_unitary(3, 0));
    EXPECT_NEAR(r3.branch_factor.value, 3.0, 1e-12);
    EXPECT_EQ(r3.branch_factor.flag, BoundFlag::kLowerBound);
    EXPECT_EQ(r3.distinguishability.flag, BoundFlag::kUpperBound);
    EXPECT_NEAR(r3.interference.value, 64.0 / 9 - 1 - 1.0 / 9, 1e-12);
    for (int n : {1, 2}) {
        const auto r = branch::branch_factor(FriendKind::random_unitary(n, 0));
        EXPECT_EQ(r.branch_factor.value, 0.0);
        EXPECT_EQ(r.branch_factor.flag, BoundFlag::kLowerBound);
    }
    // Bound grows with n.
    double prev = -1;
    for (int n = 1; n <= 12; ++n) {
        const double v = branch::branch_factor(FriendKind::random_unitary(n, 0)).branch_factor.value;
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(BranchFactor, DickeAndTwoCircuitsAreAsymptotic) {
    const auto d = branch::branch_factor(FriendKind::dicke(6, 3));
    EXPECT_EQ(d.branch_factor.flag, BoundFlag::kAsymptotic);
    EXPECT_EQ(d.branch_factor.value, 17.0);
    const auto t = branch::two_random_circuit_bounds(4, 3, 5);
    EXPECT_EQ(t.interference.value, 32.0);
    EXPECT_EQ(t.distinguishability.value, 12.0);
    EXPECT_EQ(t.branch_factor.flag, BoundFlag::kAsymptotic);
    EXPECT_NO_THROW(branch::two_random_circuit_bounds(4, 3, 0));
    EXPECT_THROW(branch::two_random_circuit_bounds(0, 1, 1), std::invalid_argument);
}

TEST(BranchFactor, FlagAlgebra) {
    EXPECT_EQ(branch::difference_flag(BoundFlag::kExact, BoundFlag::kExact), BoundFlag::kExact);
    EXPECT_EQ(branch::difference_flag(BoundFlag::kLowerBound, BoundFlag::kUpperBound), BoundFlag::kLowerBound);
    EXPECT_EQ(branch::difference_flag(BoundFlag::kExact, BoundFlag::kAsymptotic), BoundFlag::kAsymptotic);
    for (auto f : {BoundFlag::kExact, BoundFlag::kLowerBound, BoundFlag::kUpperBound, BoundFlag::kAsymptotic}) {
        EXPECT_EQ(branch::parse_bound_flag(branch::to_string(f)), f);
    }
}

TEST(BranchFactor, BruteForceConfirmsGhzComplexities) {
    for (int n = 1; n <= 3; ++n) {
        const Eigen::Index d = Eigen::Index{1} << n;
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(d), psi1 = Eigen::VectorXcd::Zero(d);
        psi0[0] = 1.0;
        psi1[d - 1] = 1.0;
        const auto ci = oracles::min_interference_cost(psi0, psi1, 1.0, n + 2);
        const auto cd = oracles::min_distinguishability_cost(psi0, psi1, 1.0, n + 2);
        ASSERT_TRUE(ci.has_value());
        ASSERT_TRUE(cd.has_value());
        const auto r = branch::branch_factor(FriendKind::ghz(n));
        EXPECT_EQ(*ci, static_cast<int>(r.interference.value)) << "n=" << n;
        EXPECT_EQ(*cd, static_cast<int>(r.distinguishability.value)) << "n=" << n;
        EXPECT_EQ(*ci - *cd, static_cast<int>(r.branch_factor.value));
    }
}

TEST(BranchFactor, MonotoneAndExponentialOvertake) {
    for (int n = 1; n < 20; ++n) {
        EXPECT_LT(branch::branch_factor(FriendKind::ghz(n)).branch_factor.value,
                  branch::branch_factor(FriendKind::ghz(n + 1)).branch_factor.value);
    }
    for (int n = 1; n <= 12; ++n) {
        const double ru = branch::branch_factor(FriendKind::random_unitary(n, 0)).branch_factor.value;
        EXPECT_GE(ru, 0.0);
        if (n >= 4) EXPECT_GT(ru, branch::branch_factor(FriendKind::ghz(n)).branch_factor.value) << n;
    }
}
