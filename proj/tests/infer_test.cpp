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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "ewfslab/ewfs/friend.hpp"
#include "ewfslab/infer/decoder.hpp"
#include "ewfslab/qsim/simulator.hpp"

using namespace ewfslab;
using infer::Decoder;
using infer::DecoderKind;
using qsim::Bitstring;

TEST(Decoder, ParseAndLabelRoundTrip) {
    for (auto k : {DecoderKind::kSignSingle, DecoderKind::kRandomSingle, DecoderKind::kMajorityVote,
                   DecoderKind::kZeroVsRest, DecoderKind::kHammingThreshold}) {
        EXPECT_EQ(infer::parse_decoder_kind(infer::to_string(k)), k);
    }
    EXPECT_THROW(infer::parse_decoder_kind("vote"), std::invalid_argument);
    EXPECT_EQ(Decoder::hamming_threshold(6).label(), "hamming_threshold(2)");
}

TEST(Decoder, ConstructionChecks) {
    EXPECT_THROW(Decoder::majority_vote(4), std::invalid_argument);
    EXPECT_THROW(Decoder::hamming_threshold(3, 0), std::invalid_argument);
    EXPECT_THROW(Decoder::hamming_threshold(3, 4), std::invalid_argument);
    EXPECT_THROW(Decoder::sign_single(3, 3), std::invalid_argument);
    EXPECT_EQ(Decoder::hamming_threshold(7).threshold(), 3);
    EXPECT_EQ(Decoder::hamming_threshold(1).threshold(), 1);
}

TEST(Decoder, DefinitionsOnEveryBitstring) {
    const int n = 5;
    const auto mv = Decoder::majority_vote(n);
    const auto zr = Decoder::zero_vs_rest(n);
    const auto ht = Decoder::hamming_threshold(n, 2);
    const auto ss = Decoder::sign_single(n, 3);
    for (uint64_t b = 0; b < 32; ++b) {
        const Bitstring bits{b, n};
        const int w = std::popcount(b);
        EXPECT_EQ(infer::decode(mv, bits), w < 3 ? 1 : -1);
        EXPECT_EQ(infer::decode(zr, bits), b == 0 ? 1 : -1);
        EXPECT_EQ(infer::decode(ht, bits), w < 2 ? 1 : -1);
        EXPECT_EQ(infer::decode(ss, bits), ((b >> 3) & 1) ? -1 : 1);
    }
}

TEST(Decoder, DiagonalAgreesWithDecode) {
    for (auto d : {Decoder::majority_vote(3), Decoder::zero_vs_rest(4), Decoder::hamming_threshold(4)}) {
        const auto diag = infer::decoder_as_diagonal(d);
        ASSERT_EQ(diag.size(), size_t{1} << d.register_size());
        for (uint64_t b = 0; b < diag.size(); ++b) {
            EXPECT_EQ(diag[b], infer::decode(d, Bitstring{b, d.register_size()}));
        }
    }
    EXPECT_THROW(infer::decoder_as_diagonal(Decoder::random_single(3)), std::logic_error);
}

TEST(Decoder, WidthMismatchThrows) {
    EXPECT_THROW(infer::decode(Decoder::majority_vote(3), Bitstring{0, 5}), std::invalid_argument);
}

TEST(Decoder, RandomSinglePicksUniformPositions) {
    const auto d = Decoder::random_single(4);
    qsim::RngStream rng(1, 2);
    // Only bit 1 set: a uniform position gives -1 a quarter of the time.
    int minus = 0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) minus += infer::decode(d, Bitstring{0b0010, 4}, rng) == -1;
    EXPECT_NEAR(minus / double(n), 0.25, 5 * std::sqrt(0.25 * 0.75 / n));
    EXPECT_THROW(infer::decode(d, Bitstring{0, 4}), std::logic_error);
}

TEST(Decoder, ExactExpectationOnGhzBranches) {
    // (|000> + |111>)/sqrt2 on qubits 1..3 with qubit 0 idle.
    auto s = qsim::StateVector::from_amplitudes(std::vector<qsim::Amplitude>(16, 0.0));
    s[0] = s[0b1110] = 1.0 / std::sqrt(2.0);
    const std::vector<int> reg{1, 2, 3};
    EXPECT_NEAR(infer::exact_expectation(s, Decoder::majority_vote(3), reg), 0.0, 1e-15);
    EXPECT_NEAR(infer::exact_expectation(s, Decoder::zero_vs_rest(3), reg), 0.0, 1e-15);
    const std::vector<int> q0{0};
    EXPECT_NEAR(infer::exact_pair_expectation(s, Decoder::sign_single(1, 0), q0, Decoder::majority_vote(3), reg),
                0.0, 1e-15);
}

TEST(Decoder, AllAgreeOnNoiselessGhzBranches) {
    qsim::RngStream rng(5, 5);
    for (int n : {1, 3, 5, 7}) {
        for (int branch : {0, 1}) {
            const Bitstring bits{branch ? (uint64_t{1} << n) - 1 : 0, n};
            const int want = branch ? -1 : 1;
            EXPECT_EQ(decode(Decoder::majority_vote(n), bits), want);
            for (int p = 0; p < n; ++p) EXPECT_EQ(decode(Decoder::sign_single(n, p), bits), want);
            for (int k = 0; k < 20; ++k) EXPECT_EQ(decode(Decoder::random_single(n), bits, rng), want);
        }
    }
}

TEST(Decoder, ZeroVsRestMisreadsHaarBranchRarely) {
    // A Haar branch U|0^n> decodes as +1 with probability |<0^n|U|0^n>|^2, which averages 2^-n.
    for (int n = 1; n <= 4; ++n) {
        const int dim = 1 << n;
        const int samples = 400;
        double total = 0.0;
        for (int s = 0; s < samples; ++s) total += std::norm(ewfs::haar_unitary(n, static_cast<uint64_t>(s))(0, 0));
        const double mean = total / samples;
        const double sd = std::sqrt((dim - 1.0) / (dim * dim * (dim + 1.0)) / samples);
        EXPECT_LE(mean, 1.0 / dim + 4 * sd) << n;
    }
}
