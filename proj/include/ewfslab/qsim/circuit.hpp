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

#ifndef EWFSLAB_QSIM_CIRCUIT_HPP
#define EWFSLAB_QSIM_CIRCUIT_HPP

#include <span>
#include <vector>

#include "ewfslab/qsim/gate.hpp"

namespace ewfslab::qsim {

/// Ordered gate list on a fixed number of qubits.
class Circuit {
   public:
    explicit Circuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }
    std::span<const Gate> gates() const { return gates_; }

    /// Throws std::out_of_range if the gate touches a qubit >= num_qubits().
    void append(Gate gate);
    /// Appends every gate of `fragment`; the fragment may be narrower than this circuit.
    void append(const Circuit& fragment);

    /// Reversed order with every gate replaced by its inverse.
    Circuit inverse() const;

   private:
    int num_qubits_;
    std::vector<Gate> gates_;
};

}  // namespace ewfslab::qsim

#endif
