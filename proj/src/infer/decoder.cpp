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

#include "ewfslab/infer/decoder.hpp"

#include <bit>
#include <stdexcept>

#include "ewfslab/qsim/simulator.hpp"

namespace ewfslab::infer {

namespace {

constexpr int kMaxRegister = 24;

void check_size(int n) {
    if (n < 1 || n > kMaxRegister) {
        throw std::invalid_argument("Decoder: register size " + std::to_string(n) +
                                    " outside [1, " + std::to_string(kMaxRegister) + "]");
    }
}

int sign_of_bit(uint64_t bits, int position) { return ((bits >> position) & 1) ? -1 : +1; }

int decode_bits(const Decoder& d, uint64_t bits) {
    const int n = d.register_size();
    const int h = std::popcount(bits);
    switch (d.kind()) {
        case DecoderKind::kSignSingle:
            return sign_of_bit(bits, d.position());
        case DecoderKind::kMajorityVote:
            return 2 * h < n ? +1 : -1;
        case DecoderKind::kZeroVsRest:
            return bits == 0 ? +1 : -1;
        case DecoderKind::kHammingThreshold:
            return h < d.threshold() ? +1 : -1;
        case DecoderKind::kRandomSingle:
            break;
    }
    throw std::logic_error("decode: RandomSingle needs a random stream");
}

void check_width(const Decoder& d, const qsim::Bitstring& bits) {
    if (bits.width != d.register_size()) {
        throw std::invalid_argument("decode: bitstring width " + std::to_string(bits.width) +
                                    " != register size " + std::to_string(d.register_size()));
    }
}

}  // namespace

std::string_view to_string(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::kSignSingle: return "sign_single";
        case DecoderKind::kRandomSingle: return "random_single";
        case DecoderKind::kMajorityVote: return "majority_vote";
        case DecoderKind::kZeroVsRest: return "zero_vs_rest";
        case DecoderKind::kHammingThreshold: return "hamming_threshold";
    }
    return "?";
}

DecoderKind parse_decoder_kind(std::string_view s) {
    for (DecoderKind k : {DecoderKind::kSignSingle, DecoderKind::kRandomSingle,
                          DecoderKind::kMajorityVote, DecoderKind::kZeroVsRest,
                          DecoderKind::kHammingThreshold}) {
        if (s == to_string(k)) return k;
    }
    throw std::invalid_argument("unknown decoder '" + std::string(s) + "'");
}

Decoder Decoder::sign_single(int register_size, int position) {
    check_size(register_size);
    if (position < 0 || position >= register_size) {
        throw std::invalid_argument("Decoder: position out of range");
    }
    return Decoder(DecoderKind::kSignSingle, register_size, position);
}

Decoder Decoder::random_single(int register_size) {
    check_size(register_size);
    return Decoder(DecoderKind::kRandomSingle, register_size, 0);
}

Decoder Decoder::majority_vote(int register_size) {
    check_size(register_size);
    if (register_size % 2 == 0) {
        throw std::invalid_argument("Decoder: majority vote needs an odd register, got " +
                                    std::to_string(register_size));
    }
    return Decoder(DecoderKind::kMajorityVote, register_size, 0);
}

Decoder Decoder::zero_vs_rest(int register_size) {
    check_size(register_size);
    return Decoder(DecoderKind::kZeroVsRest, register_size, 0);
}

Decoder Decoder::hamming_threshold(int register_size, int threshold) {
    check_size(register_size);
    if (threshold <= 0 || threshold > register_size) {
        throw std::invalid_argument("Decoder: Hamming threshold must lie in (0, n]");
    }
    return Decoder(DecoderKind::kHammingThreshold, register_size, threshold);
}

Decoder Decoder::hamming_threshold(int register_size) {
    return hamming_threshold(register_size, (register_size + 2) / 3);
}

Decoder Decoder::make(DecoderKind kind, int register_size, int threshold) {
    switch (kind) {
        case DecoderKind::kSignSingle: return sign_single(register_size, 0);
        case DecoderKind::kRandomSingle: return random_single(register_size);
        case DecoderKind::kMajorityVote: return majority_vote(register_size);
        case DecoderKind::kZeroVsRest: return zero_vs_rest(register_size);
        case DecoderKind::kHammingThreshold:
            return threshold > 0 ? hamming_threshold(register_size, threshold)
                                 : hamming_threshold(register_size);
    }
    throw std::invalid_argument("Decoder::make: unknown kind");
}

std::string Decoder::label() const {
    std::string s(to_string(kind_));
    if (kind_ == DecoderKind::kSignSingle) s += "(" + std::to_string(param_) + ")";
    if (kind_ == DecoderKind::kHammingThreshold) s += "(" + std::to_string(param_) + ")";
    return s;
}

int decode(const Decoder& decoder, const qsim::Bitstring& bits, qsim::RngStream& rng) {
    check_width(decoder, bits);
    if (decoder.kind() == DecoderKind::kRandomSingle) {
        const int pos = static_cast<int>(rng.below(static_cast<uint64_t>(decoder.register_size())));
        return sign_of_bit(bits.bits, pos);
    }
    return decode_bits(decoder, bits.bits);
}

int decode(const Decoder& decoder, const qsim::Bitstring& bits) {
    check_width(decoder, bits);
    return decode_bits(decoder, bits.bits);
}

std::vector<int8_t> decoder_as_diagonal(const Decoder& decoder) {
    if (!decoder.deterministic()) {
        throw std::logic_error("decoder_as_diagonal: RandomSingle has no fixed valuation");
    }
    const size_t d = size_t{1} << decoder.register_size();
    std::vector<int8_t> v(d);
    for (size_t z = 0; z < d; ++z) v[z] = static_cast<int8_t>(decode_bits(decoder, z));
    return v;
}

double exact_expectation(const qsim::StateVector& state, const Decoder& decoder,
                         std::span<const int> qubits) {
    if (static_cast<int>(qubits.size()) != decoder.register_size()) {
        throw std::invalid_argument("exact_expectation: qubit list does not match decoder size");
    }
    const auto v = decoder_as_diagonal(decoder);
    return qsim::exact_expectation(state, v, qubits);
}

double exact_pair_expectation(const qsim::StateVector& state, const Decoder& decoder_a,
                              std::span<const int> qubits_a, const Decoder& decoder_b,
                              std::span<const int> qubits_b) {
    if (static_cast<int>(qubits_a.size()) != decoder_a.register_size() ||
        static_cast<int>(qubits_b.size()) != decoder_b.register_size()) {
        throw std::invalid_argument(
            "exact_pair_expectation: qubit list does not match decoder size");
    }
    const auto va = decoder_as_diagonal(decoder_a);
    const auto vb = decoder_as_diagonal(decoder_b);
    return qsim::exact_pair_expectation(state, va, qubits_a, vb, qubits_b);
}

}  // namespace ewfslab::infer
