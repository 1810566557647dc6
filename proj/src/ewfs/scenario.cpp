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

#include "ewfslab/ewfs/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace ewfslab::ewfs {

namespace {

double reduce_degrees(double deg) {
    if (!std::isfinite(deg)) throw std::invalid_argument("measurement angle is not finite");
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    return r;
}

size_t checked_slot(int setting) {
    if (setting < 1 || setting > 3) {
        throw std::out_of_range("setting index must be 1, 2 or 3");
    }
    return static_cast<size_t>(setting - 1);
}

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

Setting setting_from_index(int index) {
    checked_slot(index);
    return static_cast<Setting>(index);
}

std::string_view to_string(Setting s) {
    switch (s) {
        case Setting::kPeek: return "peek";
        case Setting::kReverse1: return "reverse1";
        case Setting::kReverse2: return "reverse2";
    }
    return "?";
}

MeasurementAngles MeasurementAngles::historical() {
    MeasurementAngles a;
    a.theta_deg = {168.0, 0.0, 118.0};
    for (size_t j = 0; j < 3; ++j) a.beta_deg[j] = 220.0 - a.theta_deg[j];
    return a;
}

double MeasurementAngles::theta(int setting) const {
    return reduce_degrees(theta_deg[checked_slot(setting)]);
}

double MeasurementAngles::beta(int setting) const {
    return reduce_degrees(beta_deg[checked_slot(setting)]);
}

double MeasurementAngles::theta_rad(int setting) const { return theta(setting) * kDegToRad; }
double MeasurementAngles::beta_rad(int setting) const { return beta(setting) * kDegToRad; }

qsim::Gate basis_change_gate(int qubit, double theta_deg) {
    const double t = reduce_degrees(theta_deg) * kDegToRad;
    const double r = 1.0 / std::sqrt(2.0);
    const std::complex<double> e = std::polar(1.0, -t);
    Eigen::Matrix2cd m;
    m << r, r * e, r, -r * e;
    char buf[48];
    std::snprintf(buf, sizeof buf, "m(%.6g)", reduce_degrees(theta_deg));
    return qsim::Gate::single(buf, qubit, m);
}

qsim::Circuit singlet_prep(int num_qubits, int s_c, int s_d) {
    qsim::Circuit c(num_qubits);
    c.append(qsim::gates::h(s_c));
    c.append(qsim::gates::x(s_d));
    c.append(qsim::gates::cx(s_c, s_d));
    c.append(qsim::gates::z(s_d));
    return c;
}

EwfsCircuit build_ewfs_circuit(const FriendKind& charlie, const FriendKind& debbie,
                               const MeasurementAngles& angles, Setting x, Setting y) {
    charlie.validate();
    debbie.validate();
    checked_slot(index_of(x));
    checked_slot(index_of(y));

    QubitLayout layout;
    layout.s_c = 0;
    layout.s_d = 1;
    int next = 2;
    for (int i = 0; i < charlie.n; ++i) layout.charlie.push_back(next++);
    for (int i = 0; i < debbie.n; ++i) layout.debbie.push_back(next++);
    const int num_qubits = next;

    EwfsCircuit out{qsim::Circuit(num_qubits), {}, {}, layout, x, y, 0};
    qsim::Circuit& c = out.circuit;

    c.append(singlet_prep(num_qubits, layout.s_c, layout.s_d));
    c.append(basis_change_gate(layout.s_c, angles.theta(1)));
    c.append(basis_change_gate(layout.s_d, angles.beta(1)));
    const qsim::Circuit record_c = friend_unitary(charlie, num_qubits, layout.s_c, layout.charlie);
    const qsim::Circuit record_d = friend_unitary(debbie, num_qubits, layout.s_d, layout.debbie);
    c.append(record_c);
    c.append(record_d);
    out.prep_gate_count = c.size();

    auto observer = [&](Setting s, int system, const std::vector<int>& reg,
                        const qsim::Circuit& record, double angle1, double angle_k,
                        std::vector<int>& measured) {
        if (s == Setting::kPeek) {
            measured = reg;
            return;
        }
        c.append(record.inverse());
        c.append(basis_change_gate(system, angle1).inverse());
        c.append(basis_change_gate(system, angle_k));
        measured = {system};
    };
    observer(x, layout.s_c, layout.charlie, record_c, angles.theta(1), angles.theta(index_of(x)),
             out.alice_measured);
    observer(y, layout.s_d, layout.debbie, record_d, angles.beta(1), angles.beta(index_of(y)),
             out.bob_measured);
    return out;
}

}  // namespace ewfslab::ewfs
