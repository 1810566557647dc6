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

#ifndef EWFSLAB_QSIM_RNG_HPP
#define EWFSLAB_QSIM_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ewfslab::qsim {

/// SplitMix64 finalizer. Used to decorrelate structured seeds.
uint64_t splitmix64(uint64_t x);

/// Folds a path of integers into a single seed, e.g. derive_seed(master, {cell, trial}).
uint64_t derive_seed(uint64_t seed, std::initializer_list<uint64_t> path);

/// A reproducible random stream identified by (master_seed, stream_id).
///
/// Every draw is produced from std::mt19937_64 with hand-written conversions, so
/// the sequence is identical across standard library implementations. Two streams
/// built from equal (master_seed, stream_id) yield identical draws.
class RngStream {
   public:
    RngStream(uint64_t master_seed, uint64_t stream_id);

    uint64_t master_seed() const { return master_seed_; }
    uint64_t stream_id() const { return stream_id_; }

    uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive.
    uint64_t below(uint64_t n);

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal draw (Box-Muller, one value per call).
    double normal();

    /// Child stream whose identity depends on this stream's identity and `child`.
    RngStream split(uint64_t child) const;

   private:
    uint64_t master_seed_;
    uint64_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace ewfslab::qsim

#endif
