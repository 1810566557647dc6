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

#ifndef EWFSLAB_LF_INEQUALITY_HPP
#define EWFSLAB_LF_INEQUALITY_HPP

#include <array>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ewfslab/ewfs/scenario.hpp"

namespace ewfslab::lf {

enum class InequalityName { kGenuineLF, kBellI3322, kBrukner, kSemiBrukner, kBellNonLF };

inline constexpr std::array<InequalityName, 5> kAllInequalities = {
    InequalityName::kGenuineLF, InequalityName::kBellI3322, InequalityName::kBrukner,
    InequalityName::kSemiBrukner, InequalityName::kBellNonLF};

/// genuine_lf, bell_i3322, brukner, semi_brukner, bell_non_lf
std::string_view to_string(InequalityName name);
InequalityName parse_inequality(std::string_view s);

using Row3 = std::array<double, 3>;
using Table3 = std::array<Row3, 3>;

/// Estimated <A_x>, <B_y>, <A_x B_y>. Arrays are indexed by setting - 1.
struct ExpectationTable {
    Row3 a{};
    Row3 b{};
    Table3 ab{};
    std::array<bool, 3> a_known{};
    std::array<bool, 3> b_known{};
    std::array<std::array<bool, 3>, 3> ab_known{};

    /// Setters take 1-based setting indices.
    void set_a(int x, double v);
    void set_b(int y, double v);
    void set_ab(int x, int y, double v);
    double get_ab(int x, int y) const { return ab[x - 1][y - 1]; }
};

/// LHS = sum a_x<A_x> + sum b_y<B_y> + sum c_xy<A_x B_y> + offset; LF implies LHS <= 0.
struct InequalitySpec {
    InequalityName name;
    Row3 a_coef{};
    Row3 b_coef{};
    Table3 ab_coef{};
    double offset = 0.0;

    static InequalitySpec get(InequalityName name);

    /// Setting pairs (1-based) whose correlator has a nonzero coefficient.
    std::vector<std::pair<int, int>> correlator_pairs() const;
    /// True when Bob's PEEK setting appears anywhere in the inequality.
    bool uses_bob_peek() const;
    /// Four +/-1 correlator terms, no marginals, offset -2.
    bool is_chsh_form() const;
};

/// Throws std::invalid_argument when a required entry is missing.
double evaluate(const InequalitySpec& spec, const ExpectationTable& table);

struct LhsStatistics {
    std::vector<double> values;  // one LHS per trial
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (n - 1); 0 for one trial
    double standard_error = 0.0;
};

LhsStatistics summarize(std::vector<double> values);

/// Evaluates every trial's table and summarizes the per-trial LHS values.
LhsStatistics evaluate_trials(const InequalitySpec& spec, std::span<const ExpectationTable> trials);

/// Closed form for the singlet: <A_i> = <B_i> = 0 and <A_i B_j> = -cos(beta_j - theta_i).
ExpectationTable analytic_expectations(const ewfs::MeasurementAngles& angles);

}  // namespace ewfslab::lf

#endif
