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

#include "ewfslab/qsim/noise.hpp"

#include <algorithm>
#include <stdexcept>

#include "ewfslab/qsim/simulator.hpp"

namespace ewfslab::qsim {

std::string_view to_string(DepolarizingScope scope) {
    return scope == DepolarizingScope::kGlobal ? "global" : "local";
}

DepolarizingScope parse_depolarizing_scope(std::string_view s) {
    if (s == "global") return DepolarizingScope::kGlobal;
    if (s == "local") return DepolarizingScope::kLocal;
    throw std::invalid_argument("unknown depolarizing scope '" + std::string(s) +
                                "' (expected global or local)");
}

void NoiseModel::validate() const {
    auto check = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(std::string("noise probability ") + name +
                                        " must lie in [0, 1]");
        }
    };
    check(p1, "p1");
    check(p2, "p2");
    check(p_readout, "p_readout");
}

namespace {

// Codes 0..3 = I, X, Y, Z.
void add_pauli(uint64_t code, int qubit, PauliEvent& ev) {
    if (code == 1 || code == 2) ev.x_mask |= 1ULL << qubit;
    if (code == 2 || code == 3) ev.z_mask |= 1ULL << qubit;
}

}  // namespace

std::vector<PauliEvent> draw_pauli_events(const Circuit& circuit, const NoiseModel& noise,
                                          RngStream& rng) {
    std::vector<PauliEvent> events;
    if (!noise.has_gate_noise()) return events;
    const auto gates = circuit.gates();
    for (size_t i = 0; i < gates.size(); ++i) {
        const double p = noise.gate_probability(gates[i].weight());
        if (!(rng.uniform() < p)) continue;
        PauliEvent ev{i, 0, 0};
        if (noise.scope == DepolarizingScope::kGlobal) {
            uint64_t word = 0;
            for (int q = 0; q < circuit.num_qubits(); ++q) {
                if (q % 32 == 0) word = rng.next_u64();
                add_pauli((word >> (2 * (q % 32))) & 3, q, ev);
            }
        } else {
            uint64_t word = rng.next_u64();
            for (int q : gates[i].qubits()) {
                add_pauli(word & 3, q, ev);
                word >>= 2;
            }
        }
        if (ev.x_mask != 0 || ev.z_mask != 0) events.push_back(ev);
    }
    return events;
}

TrajectoryRunner::TrajectoryRunner(const Circuit& circuit, const NoiseModel& noise,
                                   size_t cache_budget_bytes)
    : circuit_(&circuit), noise_(noise), ideal_(circuit.num_qubits()), work_(circuit.num_qubits()) {
    noise_.validate();
    const size_t state_bytes = ideal_.dimension() * sizeof(Amplitude);
    const size_t g = circuit.size();
    if (noise_.has_gate_noise() && g > 0 && state_bytes <= cache_budget_bytes) {
        stride_ = std::max<size_t>(1, (g * state_bytes + cache_budget_bytes - 1) / cache_budget_bytes);
    }
    const auto gates = circuit.gates();
    for (size_t i = 0; i < g; ++i) {
        apply_gate(ideal_, gates[i]);
        if (stride_ != 0 && (i + 1) % stride_ == 0) checkpoints_.push_back(ideal_);
    }
}

const StateVector& TrajectoryRunner::run(RngStream& rng) {
    const std::vector<PauliEvent> events = draw_pauli_events(*circuit_, noise_, rng);
    last_ideal_ = events.empty();
    if (last_ideal_) return ideal_;

    const size_t first = events.front().after_gate;
    size_t next_gate = 0;
    if (stride_ != 0 && (first + 1) / stride_ >= 1) {
        const size_t k = (first + 1) / stride_ - 1;
        work_ = checkpoints_[k];
        next_gate = (k + 1) * stride_;
    } else {
        work_ = StateVector(circuit_->num_qubits());
    }
    const auto gates = circuit_->gates();
    size_t e = 0;
    // The checkpoint may end exactly on the gate carrying the first insertion.
    while (e < events.size() && events[e].after_gate < next_gate) {
        apply_pauli_string(work_, events[e].x_mask, events[e].z_mask);
        ++e;
    }
    for (size_t i = next_gate; i < gates.size(); ++i) {
        apply_gate(work_, gates[i]);
        while (e < events.size() && events[e].after_gate == i) {
            apply_pauli_string(work_, events[e].x_mask, events[e].z_mask);
            ++e;
        }
    }
    return work_;
}

StateVector run_noisy_trajectory(const Circuit& circuit, const NoiseModel& noise, RngStream& rng) {
    noise.validate();
    StateVector state(circuit.num_qubits());
    const std::vector<PauliEvent> events = draw_pauli_events(circuit, noise, rng);
    const auto gates = circuit.gates();
    size_t e = 0;
    for (size_t i = 0; i < gates.size(); ++i) {
        apply_gate(state, gates[i]);
        while (e < events.size() && events[e].after_gate == i) {
            apply_pauli_string(state, events[e].x_mask, events[e].z_mask);
            ++e;
        }
    }
    return state;
}

}  // namespace ewfslab::qsim
