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

#include "ewfslab/validate/validation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ewfslab/qsim/state_vector.hpp"

namespace ewfslab::validate {

namespace {

bool matches(const Eigen::MatrixXcd& m, const Eigen::Matrix2cd& ref) {
    return m.rows() == 2 && m.cols() == 2 && (m - ref).cwiseAbs().maxCoeff() < 1e-12;
}

int max_support_weight(const Eigen::VectorXcd& axis) {
    int w = 0;
    for (Eigen::Index i = 0; i < axis.size(); ++i) {
        if (std::abs(axis[i]) > 1e-12) w = std::max(w, std::popcount(static_cast<uint64_t>(i)));
    }
    return w;
}

}  // namespace

GateCounts& GateCounts::operator+=(const GateCounts& other) {
    singles += other.singles;
    doubles += other.doubles;
    exact = exact && other.exact;
    return *this;
}

int64_t generic_unitary_cnot_bound(int n) {
    if (n < 0 || n > 30) throw std::invalid_argument("generic_unitary_cnot_bound: n out of range");
    const double v = std::pow(4.0, n) / 9.0 - n / 3.0 - 1.0 / 9.0;
    // Guard against 4^n/9 landing a hair above an integer.
    return std::max<int64_t>(0, static_cast<int64_t>(std::ceil(v - 1e-9)));
}

GateCounts count_gate(const qsim::Gate& gate) {
    GateCounts c;
    switch (gate.kind()) {
        case qsim::GateKind::kSingle:
            c.singles = 1;
            break;
        case qsim::GateKind::kTwo:
            c.doubles = 1;
            break;
        case qsim::GateKind::kControlled: {
            const int k = static_cast<int>(gate.targets().size());
            if (k == 1) {
                if (matches(gate.matrix(), qsim::gates::pauli_x()) ||
                    matches(gate.matrix(), qsim::gates::pauli_z())) {
                    c.doubles = 1;
                } else {
                    c.doubles = 2;
                    c.singles = 4;
                }
            } else {
                c.doubles = generic_unitary_cnot_bound(k);
                c.exact = false;
            }
            break;
        }
        case qsim::GateKind::kControlledReflection: {
            const int k = static_cast<int>(gate.targets().size());
            c.doubles = static_cast<int64_t>(max_support_weight(gate.axis())) * k;
            c.exact = false;
            break;
        }
    }
    return c;
}

GateCounts count_gates(std::span<const qsim::Gate> gates) {
    GateCounts total;
    for (const auto& g : gates) total += count_gate(g);
    return total;
}

GateCounts count_gates(const qsim::Circuit& circuit) { return count_gates(circuit.gates()); }

GateCounts count_gate_applications(std::span<const qsim::Gate> gates) {
    GateCounts total;
    for (const auto& g : gates) {
        if (g.weight() == 1) {
            ++total.singles;
        } else {
            ++total.doubles;
        }
    }
    return total;
}

double worst_case_valid_x(double x_tilde, double q) {
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("worst_case_valid_x: need 0 < q <= 1");
    if (!(std::abs(x_tilde) <= 4.0)) {
        throw std::invalid_argument("worst_case_valid_x: need |x_tilde| <= 4");
    }
    return (x_tilde + 8.0 * (q - 1.0)) / q;
}

double min_valid_probability(double x_tilde_max) {
    if (!(x_tilde_max >= 2.0 && x_tilde_max <= 4.0)) {
        throw std::invalid_argument("min_valid_probability: need 2 < x_tilde_max <= 4");
    }
    return (8.0 - x_tilde_max) / 6.0;
}

double depolarizing_fidelity(const GateCounts& counts, double p1, double p2) {
    if (!(p1 >= 0.0 && p1 < 1.0 && p2 >= 0.0 && p2 < 1.0)) {
        throw std::invalid_argument("depolarizing_fidelity: probabilities must be in [0, 1)");
    }
    if (counts.singles < 0 || counts.doubles < 0) {
        throw std::invalid_argument("depolarizing_fidelity: negative gate count");
    }
    return std::pow(1.0 - p1, static_cast<double>(counts.singles)) *
           std::pow(1.0 - p2, static_cast<double>(counts.doubles));
}

double max_two_qubit_error(const GateCounts& counts, double single_to_double_ratio,
                           double target_fidelity, double tolerance) {
    if (!(target_fidelity > 0.0 && target_fidelity <= 1.0)) {
        throw std::invalid_argument("max_two_qubit_error: target fidelity must be in (0, 1]");
    }
    if (single_to_double_ratio < 0.0) {
        throw std::invalid_argument("max_two_qubit_error: ratio must be nonnegative");
    }
    auto fidelity = [&](double p2) {
        const double p1 = std::min(single_to_double_ratio * p2, std::nextafter(1.0, 0.0));
        return depolarizing_fidelity(counts, p1, p2);
    };
    double lo = 0.0;
    double hi = std::nextafter(1.0, 0.0);
    if (fidelity(hi) >= target_fidelity) return hi;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (fidelity(mid) >= target_fidelity) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

ValidationReport certify(const CertifyInputs& in) {
    ValidationReport r;
    r.q = depolarizing_fidelity(in.counts, in.p1, in.p2);
    r.x_tilde = in.x_tilde_mean;
    r.q_min = min_valid_probability(kTsirelsonXTilde);
    const double edge = std::clamp(in.x_tilde_mean - in.sigma_multiplier * in.x_tilde_std, -4.0, 4.0);
    if (r.q > 0.0) {
        r.x_valid_lower = worst_case_valid_x(edge, r.q);
        r.certified = r.x_valid_lower >= 2.0;
    } else {
        r.x_valid_lower = -std::numeric_limits<double>::infinity();
    }
    return r;
}

}  // namespace ewfslab::validate
