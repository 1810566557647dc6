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

#ifndef EWFSLAB_TESTS_ORACLES_DENSITY_MATRIX_HPP
#define EWFSLAB_TESTS_ORACLES_DENSITY_MATRIX_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "ewfslab/qsim/circuit.hpp"
#include "ewfslab/qsim/gate.hpp"
#include "ewfslab/qsim/noise.hpp"

namespace ewfslab::oracles {

/// Full 2^N x 2^N matrix of `gate`, built entry by entry from the definition:
/// <r|G|c> = <r_T|U|c_T> if r and c agree off the gate's qubits (and the control
/// is set), identity otherwise. Independent of the statevector kernels.
Eigen::MatrixXcd dense_gate_matrix(const qsim::Gate& gate, int num_qubits);

/// Product of dense_gate_matrix over the circuit.
Eigen::MatrixXcd dense_circuit_unitary(const qsim::Circuit& circuit);

/// Mixed-state reference simulator for small registers.
class DensityMatrix {
   public:
    explicit DensityMatrix(int num_qubits);
    static DensityMatrix from_pure(const Eigen::VectorXcd& psi);

    int num_qubits() const { return n_; }
    const Eigen::MatrixXcd& rho() const { return rho_; }

    void apply_unitary(const Eigen::MatrixXcd& u);
    /// rho -> (1 - p) rho + p I / 2^N.
    void depolarize_global(double p);
    /// rho -> (1 - p) rho + p (I_S / 2^|S| (x) Tr_S rho) for the qubit set S.
    void depolarize_local(double p, std::span<const int> qubits);

    /// Runs the circuit with the given noise channel after every gate.
    void run(const qsim::Circuit& circuit, const qsim::NoiseModel& noise);

    /// Probability of each outcome on `measured` (bit i of the index = measured[i]).
    std::vector<double> outcome_distribution(std::span<const int> measured) const;

    /// Tr(rho D) for D diagonal with entries v(local index on `qubits`).
    double expectation(std::span<const int8_t> valuation, std::span<const int> qubits) const;

   private:
    int n_;
    Eigen::MatrixXcd rho_;
};

/// Independent bit flips with probability p applied to a distribution over `width` bits.
std::vector<double> apply_readout_flips(std::vector<double> dist, int width, double p);

}  // namespace ewfslab::oracles

#endif
