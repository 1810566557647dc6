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

#ifndef EWFSLAB_QSIM_SIMULATOR_HPP
#define EWFSLAB_QSIM_SIMULATOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ewfslab/qsim/circuit.hpp"
#include "ewfslab/qsim/gate.hpp"
#include "ewfslab/qsim/rng.hpp"
#include "ewfslab/qsim/state_vector.hpp"

namespace ewfslab::qsim {

/// Applies `gate` in place. Throws std::out_of_range when the gate touches a qubit
/// the state does not have.
void apply_gate(StateVector& state, const Gate& gate);

/// Applies `u` to `targets` on the branch where `control` is 1.
void apply_controlled_unitary(StateVector& state, int control, std::span<const int> targets,
                              const Eigen::MatrixXcd& u);

void run_circuit(StateVector& state, const Circuit& circuit);

/// Noiseless run from |0...0>.
StateVector simulate(const Circuit& circuit);

/// Multiplies by the Pauli string X^x_mask Z^z_mask (Y where both bits are set),
/// including the i^{#Y} phase.
void apply_pauli_string(StateVector& state, uint64_t x_mask, uint64_t z_mask);

/// sum_z |amp_z|^2 v(z|qubits). `valuation` is indexed by the local index
/// gather_bits(z, qubits) and has length 2^|qubits|.
double exact_expectation(const StateVector& state, std::span<const int8_t> valuation,
                         std::span<const int> qubits);

/// sum_z |amp_z|^2 a(z|qubits_a) b(z|qubits_b). The qubit lists must be disjoint.
double exact_pair_expectation(const StateVector& state, std::span<const int8_t> valuation_a,
                              std::span<const int> qubits_a, std::span<const int8_t> valuation_b,
                              std::span<const int> qubits_b);

/// Draws basis indices from |amplitude|^2 by inverse-CDF lookup.
class ShotSampler {
   public:
    explicit ShotSampler(const StateVector& state);
    uint64_t sample_index(RngStream& rng) const;

   private:
    std::vector<double> cdf_;
};

/// Draws one basis index with a single linear scan (no setup cost).
uint64_t sample_index_once(const StateVector& state, RngStream& rng);

/// Extracts the bits of `index` at `measured` and flips each independently with
/// probability `p_readout`.
Bitstring read_out(uint64_t index, std::span<const int> measured, double p_readout,
                   RngStream& rng);

/// One shot: Born-rule draw on `measured`, then independent readout flips.
Bitstring sample_shot(const StateVector& state, std::span<const int> measured, double p_readout,
                      RngStream& rng);

}  // namespace ewfslab::qsim

#endif
