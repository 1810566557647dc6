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

#include "ewfslab/ewfs/friend.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ewfslab/qsim/gate.hpp"
#include "ewfslab/qsim/rng.hpp"

namespace ewfslab::ewfs {

std::string_view to_string(FriendFamily family) {
    switch (family) {
        case FriendFamily::kGhz: return "ghz";
        case FriendFamily::kRandomUnitary: return "random_unitary";
        case FriendFamily::kDicke: return "dicke";
    }
    return "?";
}

FriendFamily parse_friend_family(std::string_view s) {
    if (s == "ghz") return FriendFamily::kGhz;
    if (s == "random_unitary" || s == "random") return FriendFamily::kRandomUnitary;
    if (s == "dicke") return FriendFamily::kDicke;
    throw std::invalid_argument("unknown friend kind '" + std::string(s) + "'");
}

FriendKind FriendKind::ghz(int n) {
    FriendKind f{FriendFamily::kGhz, n, 0, 0};
    f.validate();
    return f;
}

FriendKind FriendKind::random_unitary(int n, uint64_t seed) {
    FriendKind f{FriendFamily::kRandomUnitary, n, 0, seed};
    f.validate();
    return f;
}

FriendKind FriendKind::dicke(int n, int k) {
    FriendKind f{FriendFamily::kDicke, n, k, 0};
    f.validate();
    return f;
}

void FriendKind::validate() const {
    if (n < 1) {
        throw std::invalid_argument("friend register needs at least one qubit");
    }
    if (family == FriendFamily::kDicke && (k < 1 || k >= n)) {
        throw std::invalid_argument("Dicke weight must satisfy 1 <= k < n, got k=" + std::to_string(k) +
                                    " n=" + std::to_string(n));
    }
}

bool FriendKind::within_size_limits() const {
    switch (family) {
        case FriendFamily::kRandomUnitary:
            return n <= kMaxRandomUnitaryQubits;
        case FriendFamily::kDicke:
            return n <= kMaxDickeQubits;
        default:
            return true;
    }
}

std::string FriendKind::spec() const {
    std::string s = std::string(to_string(family)) + ":" + std::to_string(n);
    if (family == FriendFamily::kRandomUnitary) s += ":" + std::to_string(seed);
    if (family == FriendFamily::kDicke) s += ":" + std::to_string(k);
    return s;
}

FriendKind FriendKind::parse(std::string_view s) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const size_t colon = s.find(':', start);
        parts.emplace_back(s.substr(start, colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    auto to_int = [&](const std::string& p) {
        size_t used = 0;
        const long long v = std::stoll(p, &used);
        if (used != p.size()) throw std::invalid_argument("bad number '" + p + "' in '" + std::string(s) + "'");
        return v;
    };
    if (parts.size() < 2) {
        throw std::invalid_argument("friend spec '" + std::string(s) +
                                    "' must look like ghz:N, random_unitary:N[:SEED] or dicke:N[:K]");
    }
    const FriendFamily family = parse_friend_family(parts[0]);
    const int n = static_cast<int>(to_int(parts[1]));
    switch (family) {
        case FriendFamily::kGhz:
            if (parts.size() != 2) throw std::invalid_argument("ghz friend takes one parameter");
            return ghz(n);
        case FriendFamily::kRandomUnitary:
            if (parts.size() > 3) throw std::invalid_argument("random_unitary takes N[:SEED]");
            return random_unitary(n, parts.size() == 3 ? static_cast<uint64_t>(std::stoull(parts[2])) : 0);
        case FriendFamily::kDicke:
            if (parts.size() > 3) throw std::invalid_argument("dicke takes N[:K]");
            return dicke(n, parts.size() == 3 ? static_cast<int>(to_int(parts[2])) : n / 2);
    }
    throw std::invalid_argument("unreachable friend family");
}

Eigen::MatrixXcd haar_unitary(int n, uint64_t seed) {
    if (n < 1 || n > kMaxRandomUnitaryQubits) {
        throw std::invalid_argument("haar_unitary: n must lie in [1, " +
                                    std::to_string(kMaxRandomUnitaryQubits) + "]");
    }
    const Eigen::Index d = Eigen::Index{1} << n;
    qsim::RngStream rng(seed, 0x4A11);
    Eigen::MatrixXcd g(d, d);
    const double s = std::sqrt(0.5);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(r, c) = std::complex<double>(s * re, s * im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& packed = qr.matrixQR();
    for (Eigen::Index i = 0; i < d; ++i) {
        const std::complex<double> rii = packed(i, i);
        const double mag = std::abs(rii);
        if (mag > 0.0) q.col(i) *= rii / mag;
    }
    return q;
}

qsim::StateVector dicke_state(int n, int k) {
    const FriendKind kind = FriendKind::dicke(n, k);
    if (!kind.within_size_limits()) {
        throw std::invalid_argument("dicke_state: n above " + std::to_string(kMaxDickeQubits));
    }
    const size_t dim = size_t{1} << n;
    size_t count = 0;
    for (size_t z = 0; z < dim; ++z) count += std::popcount(z) == k;
    const double a = 1.0 / std::sqrt(static_cast<double>(count));
    std::vector<qsim::Amplitude> amps(dim, 0.0);
    for (size_t z = 0; z < dim; ++z) {
        if (std::popcount(z) == k) amps[z] = a;
    }
    return qsim::StateVector::from_amplitudes(std::move(amps));
}

Eigen::VectorXcd dicke_reflection_axis(int n, int k) {
    const qsim::StateVector d = dicke_state(n, k);
    Eigen::VectorXcd w(static_cast<Eigen::Index>(d.dimension()));
    for (size_t z = 0; z < d.dimension(); ++z) w[static_cast<Eigen::Index>(z)] = -d[z];
    w[0] += 1.0;
    // D has no |0^n> component, so |e0 - D|^2 = 2.
    w /= w.norm();
    return w;
}

qsim::Circuit friend_unitary(const FriendKind& kind, int num_qubits, int system_qubit,
                             std::span<const int> reg) {
    kind.validate();
    if (!kind.within_size_limits()) {
        throw std::invalid_argument("friend_unitary: " + kind.spec() + " exceeds the size limit");
    }
    if (static_cast<int>(reg.size()) != kind.n) {
        throw std::invalid_argument("friend_unitary: register has " + std::to_string(reg.size()) +
                                    " qubits but the friend needs " + std::to_string(kind.n));
    }
    qsim::Circuit c(num_qubits);
    const std::vector<int> targets(reg.begin(), reg.end());
    switch (kind.family) {
        case FriendFamily::kGhz:
            c.append(qsim::gates::cx(system_qubit, reg[0]));
            for (size_t i = 1; i < reg.size(); ++i) c.append(qsim::gates::cx(reg[i - 1], reg[i]));
            break;
        case FriendFamily::kRandomUnitary:
            c.append(qsim::Gate::controlled("c-haar", system_qubit, targets,
                                            haar_unitary(kind.n, kind.seed)));
            break;
        case FriendFamily::kDicke:
            c.append(qsim::Gate::controlled_reflection(
                "c-dicke(" + std::to_string(kind.n) + "," + std::to_string(kind.k) + ")",
                system_qubit, targets, dicke_reflection_axis(kind.n, kind.k)));
            break;
    }
    return c;
}

}  // namespace ewfslab::ewfs
