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

#include "ewfslab/qsim/simulator.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace ewfslab::qsim {

namespace {

void check_in_range(const StateVector& state, const Gate& gate) {
    if (gate.max_qubit() >= state.num_qubits()) {
        throw std::out_of_range("apply_gate: " + gate.name() + " touches qubit " +
                                std::to_string(gate.max_qubit()) + " on a " +
                                std::to_string(state.num_qubits()) + "-qubit state");
    }
}

void apply_single(std::span<Amplitude> amps, int q, const Eigen::MatrixXcd& m) {
    const Amplitude m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    const size_t stride = size_t{1} << q;
    const size_t dim = amps.size();
    for (size_t base = 0; base < dim; base += 2 * stride) {
        for (size_t i = base; i < base + stride; ++i) {
            const Amplitude a0 = amps[i];
            const Amplitude a1 = amps[i + stride];
            amps[i] = m00 * a0 + m01 * a1;
            amps[i + stride] = m10 * a0 + m11 * a1;
        }
    }
}

// Local offsets of every target pattern: offsets[j] has bit targets[b] set iff bit b of j.
std::vector<size_t> local_offsets(std::span<const int> targets) {
    const size_t d = size_t{1} << targets.size();
    std::vector<size_t> offsets(d, 0);
    for (size_t j = 0; j < d; ++j) {
        for (size_t b = 0; b < targets.size(); ++b) {
            if ((j >> b) & 1) offsets[j] |= size_t{1} << targets[b];
        }
    }
    return offsets;
}

// Visits each base index whose `zero_mask` bits are clear and `one_mask` bits are set.
template <typename F>
void for_each_base(size_t dim, size_t zero_mask, size_t one_mask, F&& f) {
    const size_t fixed = zero_mask | one_mask;
    const size_t free_mask = (dim - 1) & ~fixed;
    // Enumerate subsets of free_mask in increasing order.
    size_t sub = 0;
    while (true) {
        f(sub | one_mask);
        if (sub == free_mask) break;
        sub = (sub - free_mask) & free_mask;
    }
}

void apply_dense(std::span<Amplitude> amps, std::span<const int> targets,
                 std::optional<int> control, const Eigen::MatrixXcd& u) {
    const std::vector<size_t> offsets = local_offsets(targets);
    size_t target_mask = 0;
    for (int t : targets) target_mask |= size_t{1} << t;
    const size_t one_mask = control ? (size_t{1} << *control) : 0;
    const Eigen::Index d = static_cast<Eigen::Index>(offsets.size());
    Eigen::VectorXcd in(d), out(d);
    for_each_base(amps.size(), target_mask, one_mask, [&](size_t base) {
        for (Eigen::Index j = 0; j < d; ++j) in[j] = amps[base + offsets[static_cast<size_t>(j)]];
        out.noalias() = u * in;
        for (Eigen::Index j = 0; j < d; ++j) amps[base + offsets[static_cast<size_t>(j)]] = out[j];
    });
}

void apply_reflection(std::span<Amplitude> amps, std::span<const int> targets, int control,
                      const Eigen::VectorXcd& w) {
    const std::vector<size_t> offsets = local_offsets(targets);
    size_t target_mask = 0;
    for (int t : targets) target_mask |= size_t{1} << t;
    const size_t one_mask = size_t{1} << control;
    // Only the support of w participates.
    std::vector<size_t> support;
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        if (w[j] != Amplitude{0.0, 0.0}) support.push_back(static_cast<size_t>(j));
    }
    for_each_base(amps.size(), target_mask, one_mask, [&](size_t base) {
        Amplitude overlap{0.0, 0.0};
        for (size_t j : support) {
            overlap += std::conj(w[static_cast<Eigen::Index>(j)]) * amps[base + offsets[j]];
        }
        overlap *= 2.0;
        for (size_t j : support) {
            amps[base + offsets[j]] -= w[static_cast<Eigen::Index>(j)] * overlap;
        }
    });
}

}  // namespace

void apply_gate(StateVector& state, const Gate& gate) {
    check_in_range(state, gate);
    auto amps = state.mutable_amplitudes();
    switch (gate.kind()) {
        case GateKind::kSingle:
            apply_single(amps, gate.targets()[0], gate.matrix());
            break;
        case GateKind::kTwo:
        case GateKind::kControlled:
            apply_dense(amps, gate.targets(), gate.control(), gate.matrix());
            break;
        case GateKind::kControlledReflection:
            apply_reflection(amps, gate.targets(), *gate.control(), gate.axis());
            break;
    }
}

void apply_controlled_unitary(StateVector& state, int control, std::span<const int> targets,
                              const Eigen::MatrixXcd& u) {
    apply_gate(state, Gate::controlled("cu", control, {targets.begin(), targets.end()}, u));
}

void run_circuit(StateVector& state, const Circuit& circuit) {
    if (circuit.num_qubits() > state.num_qubits()) {
        throw std::out_of_range("run_circuit: circuit is wider than the state");
    }
    for (const Gate& g : circuit.gates()) apply_gate(state, g);
}

StateVector simulate(const Circuit& circuit) {
    StateVector state(circuit.num_qubits());
    run_circuit(state, circuit);
    return state;
}

void apply_pauli_string(StateVector& state, uint64_t x_mask, uint64_t z_mask) {
    const size_t dim = state.dimension();
    if (((x_mask | z_mask) >> state.num_qubits()) != 0) {
        throw std::out_of_range("apply_pauli_string: mask exceeds register");
    }
    static constexpr Amplitude kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Amplitude phase = kIPowers[std::popcount(x_mask & z_mask) % 4];
    auto amps = state.mutable_amplitudes();
    // P|z> = phase * (-1)^{|z & z_mask|} |z ^ x_mask>
    auto sign = [&](size_t z) { return (std::popcount(z & z_mask) & 1) ? -1.0 : 1.0; };
    if (x_mask == 0) {
        for (size_t z = 0; z < dim; ++z) amps[z] *= phase * sign(z);
        return;
    }
    const size_t top = size_t{1} << (std::bit_width(x_mask) - 1);
    for (size_t z = 0; z < dim; ++z) {
        if (z & top) continue;
        const size_t w = z ^ x_mask;
        const Amplitude az = amps[z];
        const Amplitude aw = amps[w];
        amps[w] = phase * sign(z) * az;
        amps[z] = phase * sign(w) * aw;
    }
}

double exact_expectation(const StateVector& state, std::span<const int8_t> valuation,
                         std::span<const int> qubits) {
    if (valuation.size() != (size_t{1} << qubits.size())) {
        throw std::invalid_argument("exact_expectation: valuation length mismatch");
    }
    for (int q : qubits) {
        if (q < 0 || q >= state.num_qubits()) {
            throw std::out_of_range("exact_expectation: qubit out of range");
        }
    }
    const auto amps = state.amplitudes();
    double acc = 0.0;
    for (size_t z = 0; z < amps.size(); ++z) {
        const double p = std::norm(amps[z]);
        if (p == 0.0) continue;
        acc += p * valuation[gather_bits(z, qubits)];
    }
    return acc;
}

double exact_pair_expectation(const StateVector& state, std::span<const int8_t> valuation_a,
                              std::span<const int> qubits_a, std::span<const int8_t> valuation_b,
                              std::span<const int> qubits_b) {
    for (int qa : qubits_a) {
        if (std::find(qubits_b.begin(), qubits_b.end(), qa) != qubits_b.end()) {
            throw std::invalid_argument("exact_pair_expectation: qubit lists overlap");
        }
    }
    if (valuation_a.size() != (size_t{1} << qubits_a.size()) ||
        valuation_b.size() != (size_t{1} << qubits_b.size())) {
        throw std::invalid_argument("exact_pair_expectation: valuation length mismatch");
    }
    for (auto qs : {qubits_a, qubits_b}) {
        for (int q : qs) {
            if (q < 0 || q >= state.num_qubits()) {
                throw std::out_of_range("exact_pair_expectation: qubit out of range");
            }
        }
    }
    const auto amps = state.amplitudes();
    double acc = 0.0;
    for (size_t z = 0; z < amps.size(); ++z) {
        const double p = std::norm(amps[z]);
        if (p == 0.0) continue;
        acc += p * valuation_a[gather_bits(z, qubits_a)] * valuation_b[gather_bits(z, qubits_b)];
    }
    return std::clamp(acc, -1.0, 1.0);
}

ShotSampler::ShotSampler(const StateVector& state) {
    const auto amps = state.amplitudes();
    cdf_.resize(amps.size());
    double acc = 0.0;
    for (size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        cdf_[i] = acc;
    }
}

uint64_t ShotSampler::sample_index(RngStream& rng) const {
    const double u = rng.uniform() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<uint64_t>(it - cdf_.begin());
}

uint64_t sample_index_once(const StateVector& state, RngStream& rng) {
    const auto amps = state.amplitudes();
    const double u = rng.uniform() * state.norm_squared();
    double acc = 0.0;
    size_t last_nonzero = 0;
    for (size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        last_nonzero = i;
        acc += p;
        if (u < acc) return i;
    }
    return last_nonzero;
}

Bitstring read_out(uint64_t index, std::span<const int> measured, double p_readout,
                   RngStream& rng) {
    Bitstring b{gather_bits(index, measured), static_cast<int>(measured.size())};
    if (p_readout > 0.0) {
        for (int i = 0; i < b.width; ++i) {
            if (rng.bernoulli(p_readout)) b.bits ^= 1ULL << i;
        }
    }
    return b;
}

Bitstring sample_shot(const StateVector& state, std::span<const int> measured, double p_readout,
                      RngStream& rng) {
    for (int q : measured) {
        if (q < 0 || q >= state.num_qubits()) {
            throw std::out_of_range("sample_shot: qubit out of range");
        }
    }
    const uint64_t index = sample_index_once(state, rng);
    return read_out(index, measured, p_readout, rng);
}

}  // namespace ewfslab::qsim
