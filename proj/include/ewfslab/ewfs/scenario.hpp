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

#ifndef EWFSLAB_EWFS_SCENARIO_HPP
#define EWFSLAB_EWFS_SCENARIO_HPP

#include <array>
#include <string_view>
#include <vector>

#include "ewfslab/ewfs/friend.hpp"
#include "ewfslab/qsim/circuit.hpp"
#include "ewfslab/qsim/gate.hpp"

namespace ewfslab::ewfs {

/// Observer settings. The numeric value is the 1-based setting index x or y.
enum class Setting { kPeek = 1, kReverse1 = 2, kReverse2 = 3 };

inline int index_of(Setting s) { return static_cast<int>(s); }
Setting setting_from_index(int index);
std::string_view to_string(Setting s);

/// Alice's angles theta_1..3 and Bob's beta_1..3, in degrees.
struct MeasurementAngles {
    std::array<double, 3> theta_deg{};
    std::array<double, 3> beta_deg{};

    /// theta = (168, 0, 118), beta_j = 220 - theta_j.
    static MeasurementAngles historical();

    /// Angles reduced to [0, 360).
    double theta(int setting) const;
    double beta(int setting) const;
    double theta_rad(int setting) const;
    double beta_rad(int setting) const;
};

/// The single-qubit rotation M(theta) = H diag(1, e^{-i theta}) taking
/// (|0> + e^{i theta}|1>)/sqrt2 to |0> and (|0> - e^{i theta}|1>)/sqrt2 to |1>,
/// so a computational-basis readout after it measures O_theta.
qsim::Gate basis_change_gate(int qubit, double theta_deg);

/// (|01> - |10>)/sqrt2 on (s_c, s_d) from |00>, written little-endian as amplitudes
/// [0, 1/sqrt2, -1/sqrt2, 0] when s_c = 0 and s_d = 1.
qsim::Circuit singlet_prep(int num_qubits, int s_c, int s_d);

struct QubitLayout {
    int s_c = 0;
    int s_d = 1;
    std::vector<int> charlie;
    std::vector<int> debbie;
};

/// One runnable scenario for a fixed setting pair (x, y).
struct EwfsCircuit {
    qsim::Circuit circuit;
    std::vector<int> alice_measured;
    std::vector<int> bob_measured;
    QubitLayout layout;
    Setting x = Setting::kReverse1;
    Setting y = Setting::kReverse1;
    /// Gates [0, prep_gate_count) prepare the friends' post-measurement state:
    /// singlet, both friends' basis rotations, both recording unitaries.
    size_t prep_gate_count = 0;
};

/// Qubits are laid out as S_C = 0, S_D = 1, then Charlie's register, then Debbie's.
///
/// The friends first rotate their system qubit into their setting-1 basis and record
/// it with friend_unitary. PEEK reads the friend's register. REVERSE-k undoes the
/// recording unitary and the setting-1 rotation, rotates into setting k, and reads
/// the system qubit.
EwfsCircuit build_ewfs_circuit(const FriendKind& charlie, const FriendKind& debbie,
                               const MeasurementAngles& angles, Setting x, Setting y);

}  // namespace ewfslab::ewfs

#endif
