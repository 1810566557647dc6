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

#include "ewfslab/qsim/state_vector.hpp"

#include <bit>
#include <stdexcept>

namespace ewfslab::qsim {

namespace {

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("StateVector: qubit count " + std::to_string(n) +
                                    " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    check_qubit_count(num_qubits);
    amps_.assign(size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {}

StateVector StateVector::basis(int num_qubits, uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.dimension()) {
        throw std::out_of_range("StateVector::basis: index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const size_t d = amplitudes.size();
    if (d < 2 || !std::has_single_bit(d)) {
        throw std::invalid_argument("StateVector: amplitude count must be a power of two >= 2");
    }
    const int n = std::countr_zero(d);
    check_qubit_count(n);
    return StateVector(n, std::move(amplitudes));
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return s;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (size_t i = 0; i < amps_.size(); ++i) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

int Bitstring::weight() const { return std::popcount(bits); }

std::string Bitstring::to_string() const {
    std::string s(static_cast<size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if (bit(i)) s[static_cast<size_t>(i)] = '1';
    }
    return s;
}

Bitstring Bitstring::from_string(std::string_view s) {
    if (s.size() > 64) {
        throw std::invalid_argument("Bitstring: more than 64 bits");
    }
    Bitstring b;
    b.width = static_cast<int>(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            b.bits |= 1ULL << i;
        } else if (s[i] != '0') {
            throw std::invalid_argument("Bitstring: expected only '0' and '1'");
        }
    }
    return b;
}

}  // namespace ewfslab::qsim
