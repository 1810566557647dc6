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

#include "density_matrix.hpp"

#include <stdexcept>

namespace ewfslab::oracles {

namespace {

uint64_t local_index(uint64_t z, std::span<const int> qubits) {
    uint64_t out = 0;
    for (size_t i = 0; i < qubits.size(); ++i) out |= ((z >> qubits[i]) & 1ULL) << i;
    return out;
}

uint64_t qubit_mask(std::span<const int> qubits) {
    uint64_t m = 0;
    for (int q : qubits) m |= 1ULL << q;
    return m;
}

}  // namespace

Eigen::MatrixXcd dense_gate_matrix(const qsim::Gate& gate, int num_qubits) {
    const uint64_t dim = 1ULL << num_qubits;
    const auto targets = gate.targets();
    Eigen::MatrixXcd local;
    switch (gate.kind()) {
        case qsim::GateKind::kSingle:
        case qsim::GateKind::kTwo:
        case qsim::GateKind::kControlled:
            local = gate.matrix();
            break;
        case qsim::GateKind::kControlledReflection: {
            const Eigen::VectorXcd& w = gate.axis();
            local = Eigen::MatrixXcd::Identity(w.size(), w.size()) - 2.0 * w * w.adjoint();
            break;
        }
    }
    const uint64_t tmask = qubit_mask(targets);
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (uint64_t r = 0; r < dim; ++r) {
        for (uint64_t c = 0; c < dim; ++c) {
            if ((r & ~tmask) != (c & ~tmask)) continue;
            const bool active = !gate.control() || ((c >> *gate.control()) & 1ULL);
            std::complex<double> v;
            if (active) {
                v = local(static_cast<Eigen::Index>(local_index(r, targets)),
                          static_cast<Eigen::Index>(local_index(c, targets)));
            } else {
                v = r == c ? 1.0 : 0.0;
            }
            full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    return full;
}

Eigen::MatrixXcd dense_circuit_unitary(const qsim::Circuit& circuit) {
    const Eigen::Index dim = Eigen::Index{1} << circuit.num_qubits();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& g : circuit.gates()) u = dense_gate_matrix(g, circuit.num_qubits()) * u;
    return u;
}

DensityMatrix::DensityMatrix(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 10) throw std::invalid_argument("oracle supports 1..10 qubits");
    const Eigen::Index dim = Eigen::Index{1} << n_;
    rho_ = Eigen::MatrixXcd::Zero(dim, dim);
    rho_(0, 0) = 1.0;
}

DensityMatrix DensityMatrix::from_pure(const Eigen::VectorXcd& psi) {
    int n = 0;
    while ((Eigen::Index{1} << n) < psi.size()) ++n;
    DensityMatrix d(n);
    d.rho_ = psi * psi.adjoint();
    return d;
}

void DensityMatrix::apply_unitary(const Eigen::MatrixXcd& u) { rho_ = u * rho_ * u.adjoint(); }

void DensityMatrix::depolarize_global(double p) {
    const Eigen::Index dim = rho_.rows();
    rho_ = (1.0 - p) * rho_ + p * Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
}

void DensityMatrix::depolarize_local(double p, std::span<const int> qubits) {
    const uint64_t smask = qubit_mask(qubits);
    const uint64_t dim = 1ULL << n_;
    const uint64_t sub = 1ULL << qubits.size();
    auto with_sub = [&](uint64_t z, uint64_t s) {
        uint64_t out = z & ~smask;
        for (size_t i = 0; i < qubits.size(); ++i) out |= ((s >> i) & 1ULL) << qubits[i];
        return out;
    };
    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(rho_.rows(), rho_.cols());
    for (uint64_t r = 0; r < dim; ++r) {
        for (uint64_t c = 0; c < dim; ++c) {
            if ((r & smask) != 0 || (c & smask) != 0) continue;
            std::complex<double> tr = 0.0;
            for (uint64_t s = 0; s < sub; ++s) {
                tr += rho_(static_cast<Eigen::Index>(with_sub(r, s)), static_cast<Eigen::Index>(with_sub(c, s)));
            }
            for (uint64_t s = 0; s < sub; ++s) {
                mixed(static_cast<Eigen::Index>(with_sub(r, s)), static_cast<Eigen::Index>(with_sub(c, s))) =
                    tr / static_cast<double>(sub);
            }
        }
    }
    rho_ = (1.0 - p) * rho_ + p * mixed;
}

void DensityMatrix::run(const qsim::Circuit& circuit, const qsim::NoiseModel& noise) {
    for (const auto& g : circuit.gates()) {
        apply_unitary(dense_gate_matrix(g, n_));
        const double p = noise.gate_probability(g.weight());
        if (p <= 0.0) continue;
        if (noise.scope == qsim::DepolarizingScope::kGlobal) {
            depolarize_global(p);
        } else {
            const auto q = g.qubits();
            depolarize_local(p, q);
        }
    }
}

std::vector<double> DensityMatrix::outcome_distribution(std::span<const int> measured) const {
    std::vector<double> out(1ULL << measured.size(), 0.0);
    for (Eigen::Index z = 0; z < rho_.rows(); ++z) {
        out[local_index(static_cast<uint64_t>(z), measured)] += rho_(z, z).real();
    }
    return out;
}

double DensityMatrix::expectation(std::span<const int8_t> valuation, std::span<const int> qubits) const {
    double s = 0.0;
    for (Eigen::Index z = 0; z < rho_.rows(); ++z) {
        s += rho_(z, z).real() * valuation[local_index(static_cast<uint64_t>(z), qubits)];
    }
    return s;
}

std::vector<double> apply_readout_flips(std::vector<double> dist, int width, double p) {
    for (int b = 0; b < width; ++b) {
        std::vector<double> next(dist.size(), 0.0);
        for (size_t z = 0; z < dist.size(); ++z) {
            next[z] += (1.0 - p) * dist[z];
            next[z ^ (1ULL << b)] += p * dist[z];
        }
        dist = std::move(next);
    }
    return dist;
}

}  // namespace ewfslab::oracles
