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

#include "ewfslab/lf/inequality.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ewfslab::lf {

std::string_view to_string(InequalityName name) {
    switch (name) {
        case InequalityName::kGenuineLF: return "genuine_lf";
        case InequalityName::kBellI3322: return "bell_i3322";
        case InequalityName::kBrukner: return "brukner";
        case InequalityName::kSemiBrukner: return "semi_brukner";
        case InequalityName::kBellNonLF: return "bell_non_lf";
    }
    return "?";
}

InequalityName parse_inequality(std::string_view s) {
    for (InequalityName n : kAllInequalities) {
        if (s == to_string(n)) return n;
    }
    throw std::invalid_argument("unknown inequality '" + std::string(s) + "'");
}

void ExpectationTable::set_a(int x, double v) {
    a[x - 1] = v;
    a_known[x - 1] = true;
}

void ExpectationTable::set_b(int y, double v) {
    b[y - 1] = v;
    b_known[y - 1] = true;
}

void ExpectationTable::set_ab(int x, int y, double v) {
    ab[x - 1][y - 1] = v;
    ab_known[x - 1][y - 1] = true;
}

InequalitySpec InequalitySpec::get(InequalityName name) {
    InequalitySpec s{name};
    // ab_coef[x-1][y-1] multiplies <A_x B_y>.
    switch (name) {
        case InequalityName::kGenuineLF:
            s.a_coef = {-1, -1, 0};
            s.b_coef = {-1, -1, 0};
            s.ab_coef = {{{-1, -2, 0}, {-2, 2, -1}, {0, -1, -1}}};
            s.offset = -6;
            break;
        case InequalityName::kBellI3322:
            s.a_coef = {-1, 1, 0};
            s.b_coef = {1, -1, 0};
            s.ab_coef = {{{1, -1, -1}, {-1, 1, -1}, {-1, -1, 0}}};
            s.offset = -4;
            break;
        case InequalityName::kBrukner:
            s.ab_coef = {{{1, 0, -1}, {-1, 0, -1}, {0, 0, 0}}};
            s.offset = -2;
            break;
        case InequalityName::kSemiBrukner:
            s.ab_coef = {{{0, -1, 1}, {0, 0, 0}, {0, -1, -1}}};
            s.offset = -2;
            break;
        case InequalityName::kBellNonLF:
            s.ab_coef = {{{0, 0, 0}, {0, 1, -1}, {0, -1, -1}}};
            s.offset = -2;
            break;
    }
    return s;
}

std::vector<std::pair<int, int>> InequalitySpec::correlator_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 1; x <= 3; ++x) {
        for (int y = 1; y <= 3; ++y) {
            if (ab_coef[x - 1][y - 1] != 0.0) out.emplace_back(x, y);
        }
    }
    return out;
}

bool InequalitySpec::uses_bob_peek() const {
    if (b_coef[0] != 0.0) return true;
    for (int x = 0; x < 3; ++x) {
        if (ab_coef[x][0] != 0.0) return true;
    }
    return false;
}

bool InequalitySpec::is_chsh_form() const {
    for (int i = 0; i < 3; ++i) {
        if (a_coef[i] != 0.0 || b_coef[i] != 0.0) return false;
    }
    int terms = 0;
    for (const auto& row : ab_coef) {
        for (double c : row) {
            if (c == 0.0) continue;
            if (std::abs(c) != 1.0) return false;
            ++terms;
        }
    }
    return terms == 4 && offset == -2.0;
}

double evaluate(const InequalitySpec& spec, const ExpectationTable& t) {
    double lhs = spec.offset;
    auto missing = [&](const std::string& what) {
        throw std::invalid_argument(std::string(to_string(spec.name)) + " needs " + what +
                                    " which the table does not provide");
    };
    for (int i = 0; i < 3; ++i) {
        if (spec.a_coef[i] != 0.0) {
            if (!t.a_known[i]) missing("<A_" + std::to_string(i + 1) + ">");
            lhs += spec.a_coef[i] * t.a[i];
        }
        if (spec.b_coef[i] != 0.0) {
            if (!t.b_known[i]) missing("<B_" + std::to_string(i + 1) + ">");
            lhs += spec.b_coef[i] * t.b[i];
        }
        for (int j = 0; j < 3; ++j) {
            if (spec.ab_coef[i][j] == 0.0) continue;
            if (!t.ab_known[i][j]) {
                missing("<A_" + std::to_string(i + 1) + " B_" + std::to_string(j + 1) + ">");
            }
            lhs += spec.ab_coef[i][j] * t.ab[i][j];
        }
    }
    return lhs;
}

LhsStatistics summarize(std::vector<double> values) {
    LhsStatistics s;
    s.values = std::move(values);
    const size_t n = s.values.size();
    if (n == 0) return s;
    s.mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) / static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (double v : s.values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(n - 1));
        s.standard_error = s.stddev / std::sqrt(static_cast<double>(n));
    }
    return s;
}

LhsStatistics evaluate_trials(const InequalitySpec& spec, std::span<const ExpectationTable> trials) {
    std::vector<double> values;
    values.reserve(trials.size());
    for (const auto& t : trials) values.push_back(evaluate(spec, t));
    return summarize(std::move(values));
}

ExpectationTable analytic_expectations(const ewfs::MeasurementAngles& angles) {
    ExpectationTable t;
    for (int i = 1; i <= 3; ++i) {
        t.set_a(i, 0.0);
        t.set_b(i, 0.0);
        for (int j = 1; j <= 3; ++j) {
            t.set_ab(i, j, -std::cos(angles.beta_rad(j) - angles.theta_rad(i)));
        }
    }
    return t;
}

}  // namespace ewfslab::lf
