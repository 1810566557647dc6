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

#ifndef EWFSLAB_QSIM_GATE_HPP
#define EWFSLAB_QSIM_GATE_HPP

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ewfslab::qsim {

enum class GateKind {
    kSingle,       // 2x2 unitary on one qubit
    kTwo,          // 4x4 unitary on two qubits
    kControlled,   // dense 2^k unitary on k targets, applied when the control is 1
    kControlledReflection,  // I - 2|w><w| on k targets, applied when the control is 1
};

/// One gate application. Construction validates unitarity and index sets.
///
/// Local matrix ordering follows the state convention: targets[0] is the least
/// significant bit of the local index.
class Gate {
   public:
    static Gate single(std::string name, int target, const Eigen::Matrix2cd& u);
    static Gate two(std::string name, int q0, int q1, const Eigen::Matrix4cd& u);
    static Gate controlled(std::string name, int control, std::vector<int> targets,
                           Eigen::MatrixXcd u);
    /// `axis` must be a unit vector of length 2^|targets|.
    static Gate controlled_reflection(std::string name, int control, std::vector<int> targets,
                                      Eigen::VectorXcd axis);

    GateKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    std::span<const int> targets() const { return targets_; }
    std::optional<int> control() const { return control_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const Eigen::VectorXcd& axis() const { return axis_; }

    /// Control (if any) followed by targets.
    std::vector<int> qubits() const;
    int arity() const { return static_cast<int>(targets_.size()) + (control_ ? 1 : 0); }
    /// 1 for single-qubit gates, 2 for everything acting on two or more qubits.
    int weight() const { return arity() == 1 ? 1 : 2; }
    int max_qubit() const;

    Gate inverse() const;

   private:
    Gate() = default;

    GateKind kind_ = GateKind::kSingle;
    std::string name_;
    std::vector<int> targets_;
    std::optional<int> control_;
    Eigen::MatrixXcd matrix_;
    Eigen::VectorXcd axis_;
};

/// max_{ij} |(U^dagger U - I)_{ij}|
double unitarity_error(const Eigen::MatrixXcd& u);

namespace gates {

Gate x(int q);
Gate y(int q);
Gate z(int q);
Gate h(int q);
Gate s(int q);
Gate cx(int control, int target);
Gate cz(int control, int target);
/// X tensor X as one two-qubit gate.
Gate xx(int q0, int q1);

const Eigen::Matrix2cd& pauli_x();
const Eigen::Matrix2cd& pauli_y();
const Eigen::Matrix2cd& pauli_z();

}  // namespace gates

}  // namespace ewfslab::qsim

#endif
