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

#ifndef EWFSLAB_CLI_REPORT_HPP
#define EWFSLAB_CLI_REPORT_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ewfslab/cli/experiment.hpp"

namespace ewfslab::cli {

enum class OutputFormat { kCsv, kJson };
OutputFormat parse_output_format(std::string_view s);

/// mode,friend_kind,friend_size,branch_factor,bf_flag,p1,p2,p_readout,depol_scope,
/// decoder,shots,trials,seed,inequality,lhs_mean,lhs_std,violated,certified,q_estimate
extern const char* const kCsvHeader;

/// Floating-point fields use 9 significant digits. Failed records leave the result
/// columns empty; q_estimate is empty when the inequality has no certification.
std::string csv_row(const ResultRecord& record);
std::string to_csv(std::span<const ResultRecord> records);

/// JSON array of records with every field at full precision.
std::string to_json(std::span<const ResultRecord> records);
std::vector<ResultRecord> records_from_json(std::string_view text);

std::string render(std::span<const ResultRecord> records, OutputFormat format);

/// Writes `render(records, format)` to `path`. Throws std::runtime_error on I/O failure.
void emit(std::span<const ResultRecord> records, OutputFormat format, const std::string& path);

}  // namespace ewfslab::cli

#endif
