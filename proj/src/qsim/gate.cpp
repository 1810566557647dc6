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

#include "ewfslab/qsim/gate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ewfslab/qsim/state_vector.hpp"

namespace ewfslab::qsim {

namespace {

constexpr double kUnitarityTolerance = 1e-10;
// Full U^dagger U costs d^3; above this size a probe on a few vectors is used.
constexpr Eigen::Index kFullCheckDimension = 256;

void check_indices(const std::vector<int>& qubits) {
    for (size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0 || qubits[i] >= kMaxQubits) {
            throw std::out_of_range("Gate: qubit index " + std::to_string(qubits[i]) +
                                    " out of range");
        }
        for (size_t j = 0; j < i; ++j) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument("Gate: repeated qubit index " +
                                            std::to_string(qubits[i]));
            }
        }
    }
}

void check_unitary(const Eigen::MatrixXcd& u, const std::string& name) {
    if (u.rows() != u.cols()) {
        throw std::invalid_argument("Gate " + name + ": matrix is not square");
    }
    double err;
    if (u.rows() <= kFullCheckDimension) {
        err = unitarity_error(u);
    } else {
        // Norm preservation on fixed probe vectors plus column orthogonality of a few columns.
        err = 0.0;
        const Eigen::Index d = u.rows();
        Eigen::VectorXcd probe(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            probe[i] = std::complex<double>(std::cos(0.37 * static_cast<double>(i)),
                                            std::sin(1.13 * static_cast<double>(i)));
        }
        err = std::abs((u * probe).squaredNorm() - probe.squaredNorm()) / probe.squaredNorm();
        for (Eigen::Index c = 0; c < std::min<Eigen::Index>(d, 4); ++c) {
            err = std::max(err, std::abs(u.col(c).squaredNorm() - 1.0));
            for (Eigen::Index c2 = 0; c2 < c; ++c2) {
                err = std::max(err, std::abs(u.col(c).dot(u.col(c2))));
            }
        }
    }
    if (!(err < kUnitarityTolerance)) {
        throw std::invalid_argument("Gate " + name + ": matrix is not unitary (error " +
                                    std::to_string(err) + ")");
    }
}

}  // namespace

double unitarity_error(const Eigen::MatrixXcd& u) {
    const Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

Gate Gate::single(std::string name, int target, const Eigen::Matrix2cd& u) {
    Gate g;
    g.kind_ = GateKind::kSingle;
    g.name_ = std::move(name);
    g.targets_ = {target};
    check_indices(g.targets_);
    g.matrix_ = u;
    check_unitary(g.matrix_, g.name_);
    return g;
}

Gate Gate::two(std::string name, int q0, int q1, const Eigen::Matrix4cd& u) {
    Gate g;
    g.kind_ = GateKind::kTwo;
    g.name_ = std::move(name);
    g.targets_ = {q0, q1};
    check_indices(g.targets_);
    g.matrix_ = u;
    check_unitary(g.matrix_, g.name_);
    return g;
}

Gate Gate::controlled(std::string name, int control, std::vector<int> targets,
                      Eigen::MatrixXcd u) {
    if (targets.empty()) {
        throw std::invalid_argument("Gate " + name + ": controlled gate needs a target");
    }
    Gate g;
    g.kind_ = GateKind::kControlled;
    g.name_ = std::move(name);
    g.targets_ = std::move(targets);
    g.control_ = control;
    check_indices(g.qubits());
    const Eigen::Index dim = Eigen::Index{1} << g.targets_.size();
    if (u.rows() != dim || u.cols() != dim) {
        throw std::invalid_argument("Gate " + g.name_ + ": matrix dimension " +
                                    std::to_string(u.rows()) + " does not match " +
                                    std::to_string(g.targets_.size()) + " targets");
    }
    g.matrix_ = std::move(u);
    check_unitary(g.matrix_, g.name_);
    return g;
}

Gate Gate::controlled_reflection(std::string name, int control, std::vector<int> targets,
                                 Eigen::VectorXcd axis) {
    if (targets.empty()) {
        throw std::invalid_argument("Gate " + name + ": controlled gate needs a target");
    }
    Gate g;
    g.kind_ = GateKind::kControlledReflection;
    g.name_ = std::move(name);
    g.targets_ = std::move(targets);
    g.control_ = control;
    check_indices(g.qubits());
    const Eigen::Index dim = Eigen::Index{1} << g.targets_.size();
    if (axis.size() != dim) {
        throw std::invalid_argument("Gate " + g.name_ + ": axis length does not match targets");
    }
    if (std::abs(axis.squaredNorm() - 1.0) > kUnitarityTolerance) {
        throw std::invalid_argument("Gate " + g.name_ + ": reflection axis is not a unit vector");
    }
    g.axis_ = std::move(axis);
    return g;
}

std::vector<int> Gate::qubits() const {
    std::vector<int> q;
    q.reserve(targets_.size() + 1);
    if (control_) q.push_back(*control_);
    q.insert(q.end(), targets_.begin(), targets_.end());
    return q;
}

int Gate::max_qubit() const {
    int m = *std::max_element(targets_.begin(), targets_.end());
    if (control_) m = std::max(m, *control_);
    return m;
}

Gate Gate::inverse() const {
    Gate g = *this;
    if (kind_ != GateKind::kControlledReflection) {
        g.matrix_ = matrix_.adjoint();
    }
    if (!g.name_.ends_with("^-1")) {
        g.name_ += "^-1";
    } else {
        g.name_.resize(g.name_.size() - 3);
    }
    return g;
}

namespace gates {

const Eigen::Matrix2cd& pauli_x() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    return m;
}

const Eigen::Matrix2cd& pauli_y() {
    static const Eigen::Matrix2cd m =
        (Eigen::Matrix2cd() << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0)
            .finished();
    return m;
}

const Eigen::Matrix2cd& pauli_z() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    return m;
}

Gate x(int q) { return Gate::single("x", q, pauli_x()); }
Gate y(int q) { return Gate::single("y", q, pauli_y()); }
Gate z(int q) { return Gate::single("z", q, pauli_z()); }

Gate h(int q) {
    const double r = 1.0 / std::sqrt(2.0);
    return Gate::single("h", q, (Eigen::Matrix2cd() << r, r, r, -r).finished());
}

Gate s(int q) {
    return Gate::single("s", q,
                        (Eigen::Matrix2cd() << 1, 0, 0, std::complex<double>(0, 1)).finished());
}

Gate cx(int control, int target) {
    return Gate::controlled("cx", control, {target}, pauli_x());
}

Gate cz(int control, int target) {
    return Gate::controlled("cz", control, {target}, pauli_z());
}

Gate xx(int q0, int q1) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    // |b1 b0> -> |~b1 ~b0>
    for (int i = 0; i < 4; ++i) m(3 - i, i) = 1.0;
    return Gate::two("xx", q0, q1, m);
}

}  // namespace gates

}  // namespace ewfslab::qsim
