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

#ifndef EWFSLAB_LF_OPTIMIZE_HPP
#define EWFSLAB_LF_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ewfslab/ewfs/scenario.hpp"
#include "ewfslab/lf/inequality.hpp"

namespace ewfslab::lf {

struct NelderMeadOptions {
    double initial_step = 0.5;
    double tolerance = 1e-7;  // on the spread of objective values over the simplex
    int max_evaluations = 20000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Minimizes `f` from `x0` with the standard reflection/expansion/contraction/shrink
/// moves. Restarts once from the converged point to escape a collapsed simplex.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options = {});

struct AngleOptimizerOptions {
    int starts = 64;
    double tolerance = 1e-7;
    uint64_t seed = 0x1F2E3D4C;
    int max_evaluations = 20000;
};

struct OptimizedAngles {
    ewfs::MeasurementAngles angles;
    double value = 0.0;
    int best_start = -1;
};

/// Maximizes evaluate(spec, analytic_expectations(angles)) over all six angles with
/// multi-start Nelder-Mead. Starts are uniform on [0, 360)^6; ties within 1e-9 go to
/// the lowest start index, so the result is deterministic in `seed`.
OptimizedAngles optimize_angles(const InequalitySpec& spec, const AngleOptimizerOptions& options = {});

}  // namespace ewfslab::lf

#endif
