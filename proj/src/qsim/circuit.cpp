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

#include "ewfslab/qsim/circuit.hpp"

#include <stdexcept>
#include <string>

#include "ewfslab/qsim/state_vector.hpp"

namespace ewfslab::qsim {

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("Circuit: qubit count " + std::to_string(num_qubits) +
                                    " out of range");
    }
}

void Circuit::append(Gate gate) {
    if (gate.max_qubit() >= num_qubits_) {
        throw std::out_of_range("Circuit: gate " + gate.name() + " touches qubit " +
                                std::to_string(gate.max_qubit()) + " on a " +
                                std::to_string(num_qubits_) + "-qubit circuit");
    }
    gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit& fragment) {
    if (fragment.num_qubits_ > num_qubits_) {
        throw std::out_of_range("Circuit: fragment is wider than the circuit");
    }
    gates_.insert(gates_.end(), fragment.gates_.begin(), fragment.gates_.end());
}

Circuit Circuit::inverse() const {
    Circuit out(num_qubits_);
    out.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        out.gates_.push_back(it->inverse());
    }
    return out;
}

}  // namespace ewfslab::qsim
