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

#ifndef EWFSLAB_QSIM_NOISE_HPP
#define EWFSLAB_QSIM_NOISE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ewfslab/qsim/circuit.hpp"
#include "ewfslab/qsim/rng.hpp"
#include "ewfslab/qsim/state_vector.hpp"

namespace ewfslab::qsim {

/// Which qubits a depolarizing event randomizes.
///   kGlobal: the whole register, i.e. rho -> (1-p) rho + p I/2^N.
///   kLocal:  only the qubits the gate acted on.
enum class DepolarizingScope { kGlobal, kLocal };

std::string_view to_string(DepolarizingScope scope);
DepolarizingScope parse_depolarizing_scope(std::string_view s);

struct NoiseModel {
    double p1 = 0.0;         // after each single-qubit gate
    double p2 = 0.0;         // after each gate on two or more qubits
    double p_readout = 0.0;  // independent flip per measured bit
    DepolarizingScope scope = DepolarizingScope::kGlobal;

    /// Throws std::invalid_argument unless every probability is in [0, 1].
    void validate() const;
    bool has_gate_noise() const { return p1 > 0.0 || p2 > 0.0; }
    double gate_probability(int weight) const { return weight == 1 ? p1 : p2; }
};

/// A Pauli string inserted after gate `after_gate`.
struct PauliEvent {
    size_t after_gate;
    uint64_t x_mask;
    uint64_t z_mask;
};

/// Draws the Pauli insertions of one trajectory. For every gate, in order: one
/// uniform draw decides whether the channel fires; if it does, a uniformly random
/// Pauli string (identity included) is drawn over the scope's qubits.
std::vector<PauliEvent> draw_pauli_events(const Circuit& circuit, const NoiseModel& noise,
                                          RngStream& rng);

/// Monte Carlo depolarizing trajectories for one circuit.
///
/// The noiseless run is done once; trajectories without any insertion return it
/// directly, and the others restart from the nearest cached noiseless prefix.
/// Results are identical to a from-scratch simulation given the same stream.
class TrajectoryRunner {
   public:
    TrajectoryRunner(const Circuit& circuit, const NoiseModel& noise,
                     size_t cache_budget_bytes = size_t{64} << 20);

    const StateVector& ideal() const { return ideal_; }

    /// Simulates one trajectory. The returned reference stays valid until the next call.
    const StateVector& run(RngStream& rng);

    /// Whether the last run() had no Pauli insertions.
    bool last_was_ideal() const { return last_ideal_; }

   private:
    const Circuit* circuit_;
    NoiseModel noise_;
    StateVector ideal_;
    StateVector work_;
    size_t stride_ = 0;                     // 0 disables checkpoints
    std::vector<StateVector> checkpoints_;  // state after gate (k+1)*stride_-1
    bool last_ideal_ = true;
};

/// One trajectory from |0...0>. Equivalent to TrajectoryRunner::run with a fresh runner.
StateVector run_noisy_trajectory(const Circuit& circuit, const NoiseModel& noise, RngStream& rng);

}  // namespace ewfslab::qsim

#endif
