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

#include "ewfslab/qsim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ewfslab::qsim {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t seed, std::initializer_list<uint64_t> path) {
    uint64_t h = splitmix64(seed);
    for (uint64_t p : path) {
        h = splitmix64(h ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

RngStream::RngStream(uint64_t master_seed, uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      engine_(derive_seed(master_seed, {stream_id})) {}

uint64_t RngStream::below(uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("RngStream::below: n must be positive");
    }
    // Rejection sampling keeps the draw unbiased for any n.
    const uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return r % n;
}

double RngStream::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream RngStream::split(uint64_t child) const {
    return RngStream(master_seed_, derive_seed(stream_id_, {child}));
}

}  // namespace ewfslab::qsim
