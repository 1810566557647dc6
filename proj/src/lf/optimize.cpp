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

#include "ewfslab/lf/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ewfslab/qsim/rng.hpp"

namespace ewfslab::lf {

namespace {

NelderMeadResult nelder_mead_once(const std::function<double(std::span<const double>)>& f,
                                  std::vector<double> x0, const NelderMeadOptions& opt,
                                  int budget) {
    const size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
    std::vector<double> vals(n + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& p) {
        ++evals;
        return f(p);
    };
    for (size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    bool converged = false;
    while (evals < budget) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        const size_t best = order.front();
        const size_t worst = order.back();
        const size_t second_worst = order[n - 1];
        if (vals[worst] - vals[best] < opt.tolerance) {
            converged = true;
            break;
        }
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / static_cast<double>(n);
        }
        auto along = [&](double t, std::vector<double>& out) {
            for (size_t d = 0; d < n; ++d) out[d] = centroid[d] + t * (pts[worst][d] - centroid[d]);
        };
        along(-1.0, trial);
        const double fr = eval(trial);
        if (fr < vals[best]) {
            along(-2.0, trial2);
            const double fe = eval(trial2);
            if (fe < fr) {
                pts[worst] = trial2;
                vals[worst] = fe;
            } else {
                pts[worst] = trial;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second_worst]) {
            pts[worst] = trial;
            vals[worst] = fr;
            continue;
        }
        // Contraction: outside if the reflection improved on the worst point, inside otherwise.
        const bool outside = fr < vals[worst];
        along(outside ? -0.5 : 0.5, trial2);
        const double fc = eval(trial2);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = trial2;
            vals[worst] = fc;
            continue;
        }
        for (size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (size_t d = 0; d < n; ++d) pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
            vals[i] = eval(pts[i]);
        }
    }
    const size_t best = static_cast<size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return {pts[best], vals[best], evals, converged};
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options) {
    NelderMeadResult first = nelder_mead_once(f, std::move(x0), options, options.max_evaluations);
    const int remaining = options.max_evaluations - first.evaluations;
    if (remaining <= 0) return first;
    NelderMeadResult second = nelder_mead_once(f, first.x, options, remaining);
    second.evaluations += first.evaluations;
    if (second.value > first.value) {
        first.evaluations = second.evaluations;
        return first;
    }
    return second;
}

OptimizedAngles optimize_angles(const InequalitySpec& spec, const AngleOptimizerOptions& options) {
    constexpr double kRadToDeg = 180.0 / std::numbers::pi;
    auto to_angles = [&](std::span<const double> x) {
        ewfs::MeasurementAngles a;
        for (size_t i = 0; i < 3; ++i) {
            a.theta_deg[i] = x[i] * kRadToDeg;
            a.beta_deg[i] = x[3 + i] * kRadToDeg;
        }
        return a;
    };
    // Direct cosine evaluation; analytic_expectations would give the same numbers.
    auto objective = [&](std::span<const double> x) {
        ExpectationTable t;
        for (int i = 0; i < 3; ++i) {
            t.set_a(i + 1, 0.0);
            t.set_b(i + 1, 0.0);
            for (int j = 0; j < 3; ++j) t.set_ab(i + 1, j + 1, -std::cos(x[3 + j] - x[i]));
        }
        return -evaluate(spec, t);
    };
    NelderMeadOptions nm;
    nm.tolerance = options.tolerance;
    nm.max_evaluations = options.max_evaluations;

    OptimizedAngles best;
    best.value = -std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    for (int s = 0; s < options.starts; ++s) {
        qsim::RngStream rng(options.seed, static_cast<uint64_t>(s));
        std::vector<double> x0(6);
        for (double& v : x0) v = rng.uniform() * 2.0 * std::numbers::pi;
        const NelderMeadResult r = nelder_mead(objective, std::move(x0), nm);
        const double value = -r.value;
        if (value > best.value + 1e-9) {
            best.value = value;
            best.best_start = s;
            best_x = r.x;
        }
    }
    // Polish the winner with small restarted simplices.
    NelderMeadOptions polish = nm;
    polish.tolerance = 1e-15;
    for (double step : {1e-2, 1e-4}) {
        polish.initial_step = step;
        const NelderMeadResult r = nelder_mead(objective, best_x, polish);
        if (-r.value >= best.value) {
            best.value = -r.value;
            best_x = r.x;
        }
    }
    ewfs::MeasurementAngles a = to_angles(best_x);
    for (size_t i = 0; i < 3; ++i) {
        a.theta_deg[i] = a.theta(static_cast<int>(i) + 1);
        a.beta_deg[i] = a.beta(static_cast<int>(i) + 1);
    }
    best.angles = a;
    // Report the value at the stored (reduced) angles.
    best.value = evaluate(spec, analytic_expectations(best.angles));
    return best;
}

}  // namespace ewfslab::lf
