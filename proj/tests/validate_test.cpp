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

#include <cmath>
#include <numbers>

#include "ewfslab/ewfs/friend.hpp"
#include "ewfslab/ewfs/scenario.hpp"
#include "ewfslab/qsim/gate.hpp"
#include "ewfslab/qsim/rng.hpp"
#include "ewfslab/validate/validation.hpp"
#include "oracles/density_matrix.hpp"

using namespace ewfslab;
using validate::GateCounts;

TEST(WorstCase, Examples) {
    EXPECT_DOUBLE_EQ(validate::worst_case_valid_x(2.5, 1.0), 2.5);
    EXPECT_NEAR(validate::worst_case_valid_x(2.828427, 0.861929), 2.0, 1e-3);
    EXPECT_NEAR(validate::worst_case_valid_x(2.0, 0.99), (2.0 - 0.08) / 0.99, 1e-12);
    EXPECT_LT(validate::worst_case_valid_x(2.0, 0.99), 2.0);
    EXPECT_THROW(validate::worst_case_valid_x(2.0, 0.0), std::invalid_argument);
    EXPECT_THROW(validate::worst_case_valid_x(2.0, 1.1), std::invalid_argument);
    EXPECT_THROW(validate::worst_case_valid_x(4.5, 0.9), std::invalid_argument);
}

TEST(WorstCase, BoundaryIdentityHoldsForRandomQ) {
    qsim::RngStream rng(8, 8);
    for (int k = 0; k < 100; ++k) {
        const double q = 2.0 / 3.0 + rng.uniform() / 3.0;
        if (q <= 2.0 / 3.0) continue;
        EXPECT_NEAR(validate::worst_case_valid_x(8 - 6 * q, q), 2.0, 1e-12) << q;
    }
}

TEST(WorstCase, MonotoneInBothArguments) {
    qsim::RngStream rng(8, 9);
    for (int k = 0; k < 200; ++k) {
        const double q = 0.5 + 0.5 * rng.uniform();
        const double x = -4 + 7.9 * rng.uniform();
        EXPECT_LE(validate::worst_case_valid_x(x, q), validate::worst_case_valid_x(x + 0.1, q));
        EXPECT_LE(validate::worst_case_valid_x(x, q), validate::worst_case_valid_x(x, std::min(1.0, q + 0.01)) + 1e-12);
    }
}

TEST(MinValidProbability, Examples) {
    EXPECT_NEAR(validate::min_valid_probability(2.828427), 0.861929, 1e-5);
    EXPECT_DOUBLE_EQ(validate::min_valid_probability(2.0), 1.0);
    EXPECT_THROW(validate::min_valid_probability(8.0), std::invalid_argument);
    EXPECT_THROW(validate::min_valid_probability(1.9), std::invalid_argument);
    // Below q_min no x_tilde up to the maximum certifies.
    const double qmin = validate::min_valid_probability(validate::kTsirelsonXTilde);
    for (double q : {qmin - 1e-3, qmin - 0.05, 0.5}) {
        EXPECT_LT(validate::worst_case_valid_x(validate::kTsirelsonXTilde, q), 2.0);
    }
}

TEST(Fidelity, ProductFormAndSolver) {
    EXPECT_EQ(validate::depolarizing_fidelity({100, 10}, 0.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(validate::depolarizing_fidelity({0, 1}, 0.0, 0.5), 0.5);
    EXPECT_NEAR(validate::depolarizing_fidelity({3, 2}, 0.1, 0.2), std::pow(0.9, 3) * std::pow(0.8, 2), 1e-15);
    EXPECT_THROW(validate::depolarizing_fidelity({1, 1}, 1.0, 0.0), std::invalid_argument);

    const double target = 2.0 / validate::kTsirelsonXTilde;
    const double p2 = validate::max_two_qubit_error({100, 10}, 0.1, target);
    EXPECT_NEAR(p2, 0.0173, 5e-4);
    EXPECT_NEAR(validate::depolarizing_fidelity({100, 10}, 0.1 * p2, p2), target, 1e-9);
}

TEST(GateCount, ExplicitCircuits) {
    const std::vector<int> reg{2, 3, 4, 5};
    const auto ghz = ewfs::friend_unitary(ewfs::FriendKind::ghz(4), 6, 0, reg);
    EXPECT_EQ(validate::count_gates(ghz), (GateCounts{0, 4, true}));
    EXPECT_EQ(validate::count_gates(ewfs::singlet_prep(2, 0, 1)), (GateCounts{3, 1, true}));
    EXPECT_EQ(validate::count_gate(qsim::gates::xx(0, 1)), (GateCounts{0, 1, true}));
    EXPECT_EQ(validate::count_gate(qsim::gates::cz(0, 1)), (GateCounts{0, 1, true}));
    const auto ch = qsim::Gate::controlled("ch", 0, {1}, qsim::gates::h(0).matrix());
    EXPECT_EQ(validate::count_gate(ch), (GateCounts{4, 2, true}));
}

TEST(GateCount, SynthesisBoundsAreFlagged) {
    EXPECT_EQ(validate::generic_unitary_cnot_bound(1), 0);
    EXPECT_EQ(validate::generic_unitary_cnot_bound(2), 1);
    EXPECT_EQ(validate::generic_unitary_cnot_bound(3), 6);
    EXPECT_EQ(validate::generic_unitary_cnot_bound(4), 27);
    const std::vector<int> reg{1, 2, 3};
    const auto ru = validate::count_gates(ewfs::friend_unitary(ewfs::FriendKind::random_unitary(3, 5), 4, 0, reg));
    EXPECT_EQ(ru.doubles, 6);
    EXPECT_FALSE(ru.exact);
    const auto dk = validate::count_gates(ewfs::friend_unitary(ewfs::FriendKind::dicke(3, 1), 4, 0, reg));
    EXPECT_FALSE(dk.exact);
    EXPECT_GT(dk.doubles, 0);
    const auto apps = validate::count_gate_applications(
        ewfs::friend_unitary(ewfs::FriendKind::random_unitary(3, 5), 4, 0, reg).gates());
    EXPECT_EQ(apps, (GateCounts{0, 1, true}));
}

TEST(Certify, Examples) {
    validate::CertifyInputs in;
    in.x_tilde_mean = 2.82;
    auto r = validate::certify(in);
    EXPECT_EQ(r.q, 1.0);
    EXPECT_TRUE(r.certified);
    EXPECT_NEAR(r.q_min, 0.861929, 1e-5);

    // Ghz(11) friend ladder plus the peer friend: about 20 doubles.
    in.counts = {0, 20};
    in.p2 = 0.03;
    r = validate::certify(in);
    EXPECT_NEAR(r.q, std::pow(0.97, 20), 1e-12);
    EXPECT_NEAR(r.q, 0.5438, 1e-4);
    EXPECT_LT(r.q, r.q_min);
    EXPECT_FALSE(r.certified);

    // The 3-sigma edge, not the mean, decides.
    in = {};
    in.x_tilde_mean = 2.5;
    in.x_tilde_std = 0.2;
    r = validate::certify(in);
    EXPECT_NEAR(r.x_valid_lower, 1.9, 1e-12);
    EXPECT_FALSE(r.certified);
    EXPECT_EQ(r.certified, r.x_valid_lower >= 2.0);
}

TEST(ScalingLaw, GlobalDepolarizingMatchesDensityMatrix) {
    // Under global depolarizing after every gate, any observable is
    // F * ideal + (1 - F) * Tr(O) / 2^N with F the product of gate survivals.
    qsim::Circuit c(3);
    c.append(ewfs::singlet_prep(3, 0, 1));
    c.append(ewfs::basis_change_gate(0, 37.0));
    c.append(ewfs::basis_change_gate(1, 141.0));
    c.append(qsim::gates::cx(1, 2));
    const std::vector<int> measured{0, 1};
    const std::vector<int8_t> parity{1, -1, -1, 1};
    oracles::DensityMatrix ideal(3);
    ideal.run(c, {});
    const double e0 = ideal.expectation(parity, measured);
    const auto counts = validate::count_gate_applications(c.gates());
    for (double p : {0.01, 0.02, 0.03, 0.2}) {
        qsim::NoiseModel noise;
        noise.p1 = p / 2;
        noise.p2 = p;
        oracles::DensityMatrix dm(3);
        dm.run(c, noise);
        const double f = validate::depolarizing_fidelity(counts, noise.p1, noise.p2);
        EXPECT_NEAR(dm.expectation(parity, measured), f * e0, 1e-9) << p;
    }
}
