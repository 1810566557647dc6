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

#ifndef EWFSLAB_VALIDATE_VALIDATION_HPP
#define EWFSLAB_VALIDATE_VALIDATION_HPP

#include <cstdint>
#include <span>

#include "ewfslab/qsim/circuit.hpp"
#include "ewfslab/qsim/gate.hpp"

namespace ewfslab::validate {

/// Gate totals after decomposition into one-qubit rotations plus CNOT.
/// `exact` is false when any gate was charged a synthesis bound instead of a count.
struct GateCounts {
    int64_t singles = 0;
    int64_t doubles = 0;
    bool exact = true;

    GateCounts& operator+=(const GateCounts& other);
    bool operator==(const GateCounts&) const = default;
};

/// Doubles charged for a generic n-qubit unitary: ceil(4^n/9 - n/3 - 1/9).
int64_t generic_unitary_cnot_bound(int n);

/// Decomposed cost of one gate:
///   single                        1 single
///   two-qubit dense               1 double
///   controlled X or Z             1 double
///   other controlled 1-qubit U    2 doubles + 4 singles
///   controlled dense k >= 2       generic_unitary_cnot_bound(k), flagged
///   controlled reflection         (max weight in the axis support) * k doubles, flagged
GateCounts count_gate(const qsim::Gate& gate);
GateCounts count_gates(std::span<const qsim::Gate> gates);
GateCounts count_gates(const qsim::Circuit& circuit);

/// Raw gate applications by weight (what a per-gate noise channel sees): every
/// one-qubit gate is a single, every gate on two or more qubits is one double.
GateCounts count_gate_applications(std::span<const qsim::Gate> gates);

/// (x_tilde + 8(q - 1)) / q. Throws std::invalid_argument unless 0 < q <= 1 and
/// |x_tilde| <= 4.
double worst_case_valid_x(double x_tilde, double q);

/// (8 - x_tilde_max) / 6. Throws std::invalid_argument unless 2 < x_tilde_max <= 4,
/// except that x_tilde_max == 2 returns 1.
double min_valid_probability(double x_tilde_max);

/// (1 - p1)^singles (1 - p2)^doubles. Probabilities must be in [0, 1).
double depolarizing_fidelity(const GateCounts& counts, double p1, double p2);

/// Largest p2 such that depolarizing_fidelity(counts, ratio * p2, p2) >= target,
/// found by bisection on [0, 1) to `tolerance`.
double max_two_qubit_error(const GateCounts& counts, double single_to_double_ratio,
                           double target_fidelity, double tolerance = 1e-12);

/// The largest CHSH-form value, 2 sqrt 2, as x_tilde = LHS + 2.
inline constexpr double kTsirelsonXTilde = 2.8284271247461903;

struct ValidationReport {
    double q = 1.0;
    double x_tilde = 0.0;
    double x_valid_lower = 0.0;
    double q_min = 0.0;
    bool certified = false;
};

struct CertifyInputs {
    double x_tilde_mean = 0.0;
    double x_tilde_std = 0.0;
    GateCounts counts;
    double p1 = 0.0;
    double p2 = 0.0;
    double sigma_multiplier = 3.0;
};

/// q from the gate counts, then the worst-case bound at x_tilde_mean - k * std
/// (clamped to [-4, 4]). Certified iff that bound is at least 2.
ValidationReport certify(const CertifyInputs& inputs);

}  // namespace ewfslab::validate

#endif
