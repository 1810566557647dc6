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

#ifndef EWFSLAB_CLI_EXPERIMENT_HPP
#define EWFSLAB_CLI_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ewfslab/branch/branch_factor.hpp"
#include "ewfslab/cli/config.hpp"
#include "ewfslab/lf/inequality.hpp"
#include "ewfslab/validate/validation.hpp"

namespace ewfslab::cli {

/// Statistics of one setting pair (x, y) over trials. Marginal fields are present
/// when the inequality needs them from this pair.
struct PairStatistics {
    int x = 1;
    int y = 1;
    double ab_mean = 0.0;
    double ab_std = 0.0;
    std::optional<double> a_mean;
    std::optional<double> b_mean;
    /// Gate applications by weight in this pair's circuit.
    validate::GateCounts applications;
};

struct ResultRecord {
    EwfsConfig config;  // angles resolved, angle_preset kept
    std::string decoder;
    std::vector<PairStatistics> pairs;
    lf::LhsStatistics lhs;
    bool violated = false;
    bool certified = false;
    branch::BranchFactorReport branch;
    std::optional<validate::ValidationReport> validation;
    std::optional<validate::GateCounts> validation_counts;
    std::optional<double> wall_time_s;
    /// Nonempty when the run failed; then only `config` is meaningful.
    std::string error;
    std::string error_category;
};

/// Setting pairs the inequality needs, in (x, y) order: every correlator pair,
/// plus (x, 2) or (2, y) for marginals not already covered.
std::vector<std::pair<int, int>> required_pairs(const lf::InequalitySpec& spec);

/// Runs one experiment. Throws ConfigError for invalid configs and
/// InfeasibleError for sizes beyond the configured limits.
ResultRecord run_experiment(const EwfsConfig& config);

/// A cartesian grid kinds x sizes x noise levels x strategies derived from `base`.
/// An empty kinds, sizes or noise list is an empty grid; an empty strategy list
/// keeps the base decoder.
struct SweepGrid {
    EwfsConfig base;
    std::vector<ewfs::FriendFamily> kinds;
    std::vector<int> sizes;
    /// Each level p sets p2 = p and p1 = p * p1_ratio.
    std::vector<double> noise_levels;
    double p1_ratio = 1.0;
    std::vector<infer::DecoderKind> strategies;
};

/// Config of one sweep cell. The seed is derived from the base seed and the
/// kind, size and noise indices only, so decoder strategies share their shots.
struct SweepCell {
    EwfsConfig config;
    size_t kind_index = 0;
    size_t size_index = 0;
    size_t noise_index = 0;
    size_t strategy_index = 0;
};
std::vector<SweepCell> sweep_cells(const SweepGrid& grid);

/// Runs every cell; a failing cell yields a record with `error` set.
std::vector<ResultRecord> run_sweep(const SweepGrid& grid,
                                    const std::function<void(size_t, size_t)>& progress = {});

}  // namespace ewfslab::cli

#endif
