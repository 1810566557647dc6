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

#ifndef EWFSLAB_EWFS_FRIEND_HPP
#define EWFSLAB_EWFS_FRIEND_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "ewfslab/qsim/circuit.hpp"
#include "ewfslab/qsim/state_vector.hpp"

namespace ewfslab::ewfs {

enum class FriendFamily { kGhz, kRandomUnitary, kDicke };

std::string_view to_string(FriendFamily family);
/// Accepts ghz, random_unitary (or random), dicke.
FriendFamily parse_friend_family(std::string_view s);

/// Largest register for which a dense Haar unitary is built.
inline constexpr int kMaxRandomUnitaryQubits = 12;
inline constexpr int kMaxDickeQubits = 20;

/// The friend's register and how it records the system qubit.
///
///   Ghz(n):              CNOT ladder, branches |0^n> and |1^n>
///   RandomUnitary(n, s): controlled Haar unitary U, branches |0^n> and U|0^n>
///   Dicke(n, k):         controlled V with V|0^n> = D(n, k)
struct FriendKind {
    FriendFamily family = FriendFamily::kGhz;
    int n = 1;
    int k = 0;          // Dicke Hamming weight
    uint64_t seed = 0;  // RandomUnitary sampling seed

    static FriendKind ghz(int n);
    static FriendKind random_unitary(int n, uint64_t seed);
    static FriendKind dicke(int n, int k);

    /// Throws std::invalid_argument for malformed parameters (n < 1, Dicke k outside [1, n)).
    void validate() const;
    /// Random-unitary friends up to kMaxRandomUnitaryQubits, Dicke up to kMaxDickeQubits.
    bool within_size_limits() const;

    /// e.g. "ghz:5", "random_unitary:3:42", "dicke:4:2"; parse() accepts the same forms
    /// ("random" is an alias, a missing seed is 0, a missing Dicke weight is n/2).
    std::string spec() const;
    static FriendKind parse(std::string_view s);

    bool operator==(const FriendKind&) const = default;
};

/// Haar-distributed 2^n x 2^n unitary: QR of a complex Ginibre matrix with the
/// diagonal phases of R divided out. Deterministic in `seed`.
Eigen::MatrixXcd haar_unitary(int n, uint64_t seed);

/// Equal superposition of all weight-k basis strings on n qubits. Requires 1 <= k < n.
qsim::StateVector dicke_state(int n, int k);

/// Householder axis w with (I - 2ww^dagger)|0^n> = D(n, k).
Eigen::VectorXcd dicke_reflection_axis(int n, int k);

/// The friend's recording unitary, controlled on `system_qubit`, acting on `reg`
/// (reg.size() == kind.n) inside a `num_qubits`-wide circuit.
qsim::Circuit friend_unitary(const FriendKind& kind, int num_qubits, int system_qubit,
                             std::span<const int> reg);

}  // namespace ewfslab::ewfs

#endif
