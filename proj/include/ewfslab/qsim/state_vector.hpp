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

#ifndef EWFSLAB_QSIM_STATE_VECTOR_HPP
#define EWFSLAB_QSIM_STATE_VECTOR_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ewfslab::qsim {

using Amplitude = std::complex<double>;

/// Largest register the dense engine will allocate.
inline constexpr int kMaxQubits = 30;

/// Dense amplitude vector over 2^n basis states.
///
/// Basis ordering is little-endian: qubit 0 is the least significant bit of the
/// basis index, so amplitude index 0b10 is qubit 1 set and qubit 0 clear.
class StateVector {
   public:
    /// The all-zeros state |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits);

    static StateVector basis(int num_qubits, uint64_t index);

    /// Takes ownership of `amplitudes`; length must be a power of two >= 2.
    /// The caller is responsible for normalization.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    int num_qubits() const { return num_qubits_; }
    size_t dimension() const { return amps_.size(); }

    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> mutable_amplitudes() { return amps_; }

    const Amplitude& operator[](size_t i) const { return amps_[i]; }
    Amplitude& operator[](size_t i) { return amps_[i]; }

    double norm_squared() const;

    /// Probability of each basis index.
    std::vector<double> probabilities() const;

   private:
    StateVector(int num_qubits, std::vector<Amplitude> amps);

    int num_qubits_;
    std::vector<Amplitude> amps_;
};

/// Measured bits packed little-endian: bit i is the i-th measured qubit.
struct Bitstring {
    uint64_t bits = 0;
    int width = 0;

    bool bit(int i) const { return ((bits >> i) & 1) != 0; }
    int weight() const;

    /// Character i is bit i, e.g. "001" has only bit 2 set.
    std::string to_string() const;
    static Bitstring from_string(std::string_view s);

    bool operator==(const Bitstring&) const = default;
};

/// Collects the bits of `index` at positions `qubits` into a packed local index.
inline uint64_t gather_bits(uint64_t index, std::span<const int> qubits) {
    uint64_t out = 0;
    for (size_t i = 0; i < qubits.size(); ++i) {
        out |= ((index >> qubits[i]) & 1ULL) << i;
    }
    return out;
}

}  // namespace ewfslab::qsim

#endif
