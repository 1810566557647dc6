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

#ifndef EWFSLAB_CLI_CONFIG_HPP
#define EWFSLAB_CLI_CONFIG_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ewfslab/ewfs/friend.hpp"
#include "ewfslab/ewfs/scenario.hpp"
#include "ewfslab/infer/decoder.hpp"
#include "ewfslab/lf/inequality.hpp"
#include "ewfslab/qsim/noise.hpp"

namespace ewfslab::cli {

/// How correlators are obtained.
///   kExact:          noiseless diagonal expectation of the final state
///   kAnalyticScaled: noiseless value times the global depolarizing factor of the circuit
///   kSampled:        shots (and noise trajectories), decoded one bitstring at a time
enum class Mode { kExact, kAnalyticScaled, kSampled };
std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);

/// kOptimal: optimizer maximum for the configured inequality.
/// kHistorical: theta = (168, 0, 118), beta = 220 - theta.
/// kExplicit: the angles stored in the config.
enum class AnglePreset { kOptimal, kHistorical, kExplicit };
std::string_view to_string(AnglePreset p);
AnglePreset parse_angle_preset(std::string_view s);

/// When RandomSingle draws its qubit: once per trial and circuit, or per shot.
enum class RandomSingleScope { kTrial, kShot };
std::string_view to_string(RandomSingleScope s);
RandomSingleScope parse_random_single_scope(std::string_view s);

/// Which gates enter the validity estimate q.
enum class ValidationScope { kFriendPrep, kWholeCircuit };
std::string_view to_string(ValidationScope s);
ValidationScope parse_validation_scope(std::string_view s);

/// Thrown for malformed configuration keys or values.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a valid configuration is too large to simulate.
class InfeasibleError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct EwfsConfig {
    ewfs::FriendKind friend_charlie = ewfs::FriendKind::ghz(1);
    ewfs::FriendKind friend_debbie = ewfs::FriendKind::ghz(1);
    AnglePreset angle_preset = AnglePreset::kOptimal;
    ewfs::MeasurementAngles angles;  // used as-is for kExplicit; filled in by resolve_angles
    lf::InequalityName inequality = lf::InequalityName::kSemiBrukner;
    Mode mode = Mode::kSampled;
    qsim::NoiseModel noise;
    int shots = 10000;
    int trials = 10;
    uint64_t master_seed = 1;
    /// Observers' PEEK decoder; unset picks per family (GHZ majority_vote,
    /// random_unitary zero_vs_rest, Dicke hamming_threshold).
    std::optional<infer::DecoderKind> decoder_peek;
    int hamming_threshold = 0;  // 0 = ceil(n/3)
    int shots_per_trajectory = 1;
    int qubit_cap = 24;
    int threads = 1;
    /// Draw a fresh Haar unitary for every trial instead of one per experiment.
    bool haar_resample = false;
    RandomSingleScope random_single_scope = RandomSingleScope::kTrial;
    ValidationScope validation_scope = ValidationScope::kFriendPrep;
    double sigma_k = 3.0;
    /// (min Charlie size, shots): the entry with the largest size <= n replaces `shots`.
    std::vector<std::pair<int, int>> shot_overrides;
    bool record_timing = false;

    /// Throws ConfigError on inconsistent fields.
    void validate() const;
    int total_qubits() const { return 2 + friend_charlie.n + friend_debbie.n; }
    int shots_for_size(int charlie_size) const;
    infer::DecoderKind peek_decoder_kind(const ewfs::FriendKind& kind) const;
    infer::Decoder peek_decoder(const ewfs::FriendKind& kind) const;
};

/// Angles the experiment will use. Optimal angles are computed once per inequality
/// and cached for the process.
ewfs::MeasurementAngles resolve_angles(const EwfsConfig& config);

/// Sets one key. Keys:
///   charlie, debbie (friend specs such as ghz:5), angles (optimal|historical|explicit),
///   theta, beta (three comma-separated degrees; imply angles=explicit), inequality, mode,
///   p1, p2, p_readout, depol_scope, shots, trials, seed, decoder (or auto),
///   hamming_threshold, shots_per_trajectory, qubit_cap, threads, haar_resample,
///   random_single_scope, validation_scope, sigma_k, shot_overrides (size:shots,...), timing.
void set_config_value(EwfsConfig& config, std::string_view key, std::string_view value);

/// Flat "key = value" lines; '#' starts a comment; blank lines are ignored.
EwfsConfig parse_config(std::istream& in, EwfsConfig base = {});
EwfsConfig load_config_file(const std::string& path, EwfsConfig base = {});

/// Inverse of parse_config: every key, one per line, in a fixed order.
std::string format_config(const EwfsConfig& config);

/// Comma-separated helpers shared with the command-line tool.
std::vector<std::string> split_list(std::string_view s, char sep = ',');
double parse_double(std::string_view s, std::string_view what);
int64_t parse_int(std::string_view s, std::string_view what);
bool parse_bool(std::string_view s, std::string_view what);

}  // namespace ewfslab::cli

#endif
