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

#ifndef EWFSLAB_INFER_DECODER_HPP
#define EWFSLAB_INFER_DECODER_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ewfslab/qsim/rng.hpp"
#include "ewfslab/qsim/state_vector.hpp"

namespace ewfslab::infer {

enum class DecoderKind {
    kSignSingle,        // +1 iff bits[position] == 0
    kRandomSingle,      // SignSingle at a uniformly drawn position
    kMajorityVote,      // +1 iff H(bits) < n/2; odd n only
    kZeroVsRest,        // +1 iff bits == 0^n
    kHammingThreshold,  // +1 iff H(bits) < t
};

std::string_view to_string(DecoderKind kind);
/// Accepts sign_single, random_single, majority_vote, zero_vs_rest, hamming_threshold.
DecoderKind parse_decoder_kind(std::string_view s);

/// Maps a measured register bitstring to a +/-1 outcome.
class Decoder {
   public:
    static Decoder sign_single(int register_size, int position);
    static Decoder random_single(int register_size);
    static Decoder majority_vote(int register_size);
    static Decoder zero_vs_rest(int register_size);
    static Decoder hamming_threshold(int register_size, int threshold);
    /// threshold = ceil(n/3)
    static Decoder hamming_threshold(int register_size);

    /// Builds a decoder of `kind` for an n-qubit register with default parameters
    /// (position 0, threshold `threshold` or ceil(n/3) when threshold <= 0).
    static Decoder make(DecoderKind kind, int register_size, int threshold = 0);

    DecoderKind kind() const { return kind_; }
    int register_size() const { return n_; }
    int position() const { return param_; }
    int threshold() const { return param_; }
    bool deterministic() const { return kind_ != DecoderKind::kRandomSingle; }
    std::string label() const;

    bool operator==(const Decoder&) const = default;

   private:
    Decoder(DecoderKind kind, int n, int param) : kind_(kind), n_(n), param_(param) {}

    DecoderKind kind_;
    int n_;
    int param_;
};

/// Decodes one bitstring. Only RandomSingle consumes `rng`.
int decode(const Decoder& decoder, const qsim::Bitstring& bits, qsim::RngStream& rng);
/// Deterministic decoders only; throws std::logic_error for RandomSingle.
int decode(const Decoder& decoder, const qsim::Bitstring& bits);

/// v(z) in {+1,-1} for every local basis index z of the register. Throws
/// std::logic_error for RandomSingle.
std::vector<int8_t> decoder_as_diagonal(const Decoder& decoder);

double exact_expectation(const qsim::StateVector& state, const Decoder& decoder,
                         std::span<const int> qubits);

/// <A B> with A = decoder_a on qubits_a and B = decoder_b on qubits_b, no sampling.
double exact_pair_expectation(const qsim::StateVector& state, const Decoder& decoder_a,
                              std::span<const int> qubits_a, const Decoder& decoder_b,
                              std::span<const int> qubits_b);

}  // namespace ewfslab::infer

#endif
