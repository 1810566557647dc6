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

// Runs the end-to-end acceptance checks and prints one PASS/FAIL line per check.
// Exit status is the number of failing checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ewfslab/branch/branch_factor.hpp"
#include "ewfslab/cli/config.hpp"
#include "ewfslab/cli/experiment.hpp"
#include "ewfslab/cli/report.hpp"
#include "ewfslab/ewfs/scenario.hpp"
#include "ewfslab/infer/decoder.hpp"
#include "ewfslab/lf/optimize.hpp"
#include "ewfslab/qsim/noise.hpp"
#include "ewfslab/qsim/simulator.hpp"
#include "ewfslab/validate/validation.hpp"
#include "oracles/branch_search.hpp"
#include "oracles/density_matrix.hpp"

using namespace ewfslab;

namespace {

const double kMax = 2.0 * std::numbers::sqrt2 - 2.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cli::EwfsConfig base_config() {
    cli::EwfsConfig c;
    c.threads = 0;
    return c;
}

Outcome table_maxima() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Row {
        lf::InequalityName name;
        double target, tol;
    };
    const Row rows[] = {{lf::InequalityName::kSemiBrukner, kMax, 1e-4},
                        {lf::InequalityName::kBrukner, kMax, 1e-4},
                        {lf::InequalityName::kBellNonLF, kMax, 1e-4},
                        {lf::InequalityName::kBellI3322, 1.0, 1e-3},
                        {lf::InequalityName::kGenuineLF, 1.27884, 1e-3}};
    Outcome o{true, ""};
    for (const auto& r : rows) {
        const double v = lf::optimize_angles(lf::InequalitySpec::get(r.name)).value;
        o.pass &= std::abs(v - r.target) <= r.tol;
        o.detail += fmt("%s=%.6f ", std::string(lf::to_string(r.name)).c_str(), v);
    }
    const double dt = seconds_since(t0);
    o.pass &= dt < 10.0;
    o.detail += fmt("time=%.2fs", dt);
    return o;
}

Outcome simulator_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    qsim::RngStream rng(20260101, 2);
    double worst = 0.0;
    int checked = 0;
    for (int n : {1, 3, 5}) {
        const auto kind = ewfs::FriendKind::ghz(n);
        for (int rep = 0; rep < 50; ++rep) {
            ewfs::MeasurementAngles a;
            for (auto& t : a.theta_deg) t = 360.0 * rng.uniform();
            for (auto& b : a.beta_deg) b = 360.0 * rng.uniform();
            for (int x = 1; x <= 3; ++x) {
                for (int y = 1; y <= 3; ++y) {
                    const auto ec = ewfs::build_ewfs_circuit(kind, ewfs::FriendKind::ghz(1), a,
                                                             ewfs::setting_from_index(x), ewfs::setting_from_index(y));
                    const auto st = qsim::simulate(ec.circuit);
                    const auto da = x == 1 ? infer::Decoder::majority_vote(n) : infer::Decoder::sign_single(1, 0);
                    const auto db = y == 1 ? infer::Decoder::majority_vote(1) : infer::Decoder::sign_single(1, 0);
                    const double got = infer::exact_pair_expectation(st, da, ec.alice_measured, db, ec.bob_measured);
                    const double want = -std::cos((a.beta_deg[y - 1] - a.theta_deg[x - 1]) * std::numbers::pi / 180.0);
                    worst = std::max(worst, std::abs(got - want));
                    ++checked;
                }
            }
        }
    }
    const double dt = seconds_since(t0);
    return {worst <= 1e-9 && dt < 60.0, fmt("%d correlators, max |err|=%.2e, time=%.2fs", checked, worst, dt)};
}

Outcome noiseless_sampled_scale() {
    Outcome o{true, ""};
    double worst_z = 0.0;
    for (int n = 1; n <= 17; n += 2) {
        auto c = base_config();
        c.friend_charlie = ewfs::FriendKind::ghz(n);
        c.shots = 10000;
        c.trials = 10;
        c.master_seed = 300 + static_cast<uint64_t>(n);
        const auto r = cli::run_experiment(c);
        const double z = std::abs(r.lhs.mean - kMax) / r.lhs.stddev;
        worst_z = std::max(worst_z, z);
        o.pass &= std::abs(r.lhs.mean - kMax) <= 3 * r.lhs.stddev && r.violated;
        if (n == 17) o.detail += fmt("n=17 (%d qubits) lhs=%.4f+-%.4f, ", c.total_qubits(), r.lhs.mean, r.lhs.stddev);
    }
    o.detail += fmt("max |dev|/sigma=%.2f over odd n<=17", worst_z);
    return o;
}

Outcome scaling_law() {
    Outcome o{true, ""};
    // Exact: three-qubit EWFS-like circuit, global depolarizing, density matrix.
    qsim::Circuit c(3);
    c.append(ewfs::singlet_prep(3, 0, 1));
    c.append(ewfs::basis_change_gate(0, 23.0));
    c.append(qsim::gates::cx(0, 2));
    c.append(ewfs::basis_change_gate(1, 200.0));
    const std::vector<int> measured{2, 1};
    const std::vector<int8_t> parity{1, -1, -1, 1};
    oracles::DensityMatrix ideal(3);
    ideal.run(c, {});
    const double e0 = ideal.expectation(parity, measured);
    const auto counts = validate::count_gate_applications(c.gates());
    double worst_exact = 0.0, worst_z = 0.0;
    for (double p : {0.01, 0.02, 0.03, 0.1}) {
        qsim::NoiseModel m;
        m.p1 = p;
        m.p2 = p;
        oracles::DensityMatrix dm(3);
        dm.run(c, m);
        const double f = validate::depolarizing_fidelity(counts, p, p);
        worst_exact = std::max(worst_exact, std::abs(dm.expectation(parity, measured) - f * e0));
    }
    o.pass &= worst_exact <= 1e-9;

    // Trajectories: the full sampled harness against the scaled analytic value.
    for (double p : {0.01, 0.02, 0.03}) {
        auto cfg = base_config();
        cfg.noise.p1 = p;
        cfg.noise.p2 = p;
        cfg.shots = 1000;
        cfg.trials = 10;
        cfg.master_seed = 400 + static_cast<uint64_t>(p * 1000);
        cfg.mode = cli::Mode::kAnalyticScaled;
        const auto analytic = cli::run_experiment(cfg);
        cfg.mode = cli::Mode::kSampled;
        const auto sampled = cli::run_experiment(cfg);
        const double se = sampled.lhs.stddev / std::sqrt(static_cast<double>(cfg.trials));
        const double z = std::abs(sampled.lhs.mean - analytic.lhs.mean) / se;
        worst_z = std::max(worst_z, z);
        o.pass &= z <= 3.0;
    }
    o.detail = fmt("density-matrix max |err|=%.2e; 10^4 trajectories max |dev|/se=%.2f", worst_exact, worst_z);
    return o;
}

Outcome threshold_monotonicity() {
    cli::SweepGrid g;
    g.base = base_config();
    g.base.mode = cli::Mode::kAnalyticScaled;
    g.base.trials = 1;
    g.kinds = {ewfs::FriendFamily::kGhz};
    for (int n = 1; n <= 17; n += 2) g.sizes.push_back(n);
    g.noise_levels = {0.01, 0.02, 0.03};
    const auto recs = cli::run_sweep(g);
    std::map<double, int> largest;
    for (double p : g.noise_levels) largest[p] = 0;
    for (const auto& r : recs) {
        if (!r.error.empty()) return {false, r.error};
        if (r.violated) largest[r.config.noise.p2] = std::max(largest[r.config.noise.p2], r.config.friend_charlie.n);
    }
    const bool ok = largest[0.01] >= largest[0.02] && largest[0.02] >= largest[0.03] && largest[0.03] < largest[0.01];
    return {ok, fmt("largest violating GHZ size: p=1%% n=%d, p=2%% n=%d, p=3%% n=%d", largest[0.01], largest[0.02],
                    largest[0.03])};
}

Outcome decoder_variance() {
    cli::SweepGrid g;
    g.base = base_config();
    g.base.shots = 10000;
    g.base.trials = 10;
    g.base.shots_per_trajectory = 1;
    g.base.noise.p_readout = 0.01;
    g.base.noise.scope = qsim::DepolarizingScope::kLocal;
    g.base.master_seed = 600;
    g.kinds = {ewfs::FriendFamily::kGhz};
    g.sizes = {3, 5, 7};
    g.noise_levels = {0.005, 0.01, 0.02};
    g.strategies = {infer::DecoderKind::kMajorityVote, infer::DecoderKind::kRandomSingle};
    const auto recs = cli::run_sweep(g);
    int ordered = 0, agree = 0, cells = 0;
    double worst_z = 0.0;
    for (size_t i = 0; i + 1 < recs.size(); i += 2) {
        const auto& mv = recs[i];
        const auto& rs = recs[i + 1];
        if (!mv.error.empty() || !rs.error.empty()) return {false, mv.error + rs.error};
        ++cells;
        const double sigma = std::sqrt((mv.lhs.stddev * mv.lhs.stddev + rs.lhs.stddev * rs.lhs.stddev) / 2.0);
        const double z = std::abs(mv.lhs.mean - rs.lhs.mean) / sigma;
        worst_z = std::max(worst_z, z);
        agree += z <= 3.0;
        ordered += mv.lhs.stddev <= rs.lhs.stddev;
    }
    return {cells == 9 && agree == cells && ordered >= 8,
            fmt("means within 3 sigma in %d/%d cells (max %.2f sigma); majority std <= random std in %d/%d", agree,
                cells, worst_z, ordered, cells)};
}

Outcome branch_values() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int n = 1; n <= 20; ++n) {
        const auto r = branch::branch_factor(ewfs::FriendKind::ghz(n));
        ok &= r.branch_factor.value == n - 1 && r.branch_factor.flag == branch::BoundFlag::kExact;
    }
    const auto ru = branch::branch_factor(ewfs::FriendKind::random_unitary(3, 0)).branch_factor;
    ok &= std::abs(ru.value - 3.0) < 1e-12 && ru.flag == branch::BoundFlag::kLowerBound;
    std::string brute;
    for (int n = 1; n <= 3; ++n) {
        const Eigen::Index d = Eigen::Index{1} << n;
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(d), psi1 = Eigen::VectorXcd::Zero(d);
        psi0[0] = 1.0;
        psi1[d - 1] = 1.0;
        const auto ci = oracles::min_interference_cost(psi0, psi1, 1.0, n + 2);
        const auto cd = oracles::min_distinguishability_cost(psi0, psi1, 1.0, n + 2);
        ok &= ci == n && cd == 1;
        brute += fmt("n=%d C_I=%d C_D=%d ", n, ci.value_or(-1), cd.value_or(-1));
    }
    const double dt = seconds_since(t0);
    ok &= dt < 60.0;
    return {ok, fmt("GHZ B=n-1 for n<=20, RU(3) bound=%.3f, brute force %stime=%.2fs", ru.value, brute.c_str(), dt)};
}

Outcome validation_algebra() {
    const double qmin = validate::min_valid_probability(2.828427);
    bool ok = std::abs(qmin - 0.861929) <= 1e-5;
    qsim::RngStream rng(800, 0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        // Keep 8 - 6q inside the admissible range |x| <= 4.
        const double q = 2.0 / 3.0 + (1.0 / 3.0) * (1.0 - rng.uniform());
        worst = std::max(worst, std::abs(validate::worst_case_valid_x(8 - 6 * q, q) - 2.0));
    }
    ok &= worst <= 1e-12;
    return {ok, fmt("q_min(2.828427)=%.6f, max |X_valid - 2| over 100 q = %.1e", qmin, worst)};
}

Outcome threshold_solver() {
    const double p2 = validate::max_two_qubit_error({100, 10}, 0.1, 2.0 / 2.828427);
    return {std::abs(p2 - 0.0173) <= 5e-4, fmt("p2_max=%.5f", p2)};
}

Outcome random_unitary_friend() {
    Outcome o{true, ""};
    for (int n = 1; n <= 4; ++n) {
        auto c = base_config();
        c.friend_charlie = ewfs::FriendKind::random_unitary(n, 1000 + static_cast<uint64_t>(n));
        c.haar_resample = true;
        c.shots = 10000;
        c.trials = 100;
        c.master_seed = 1000 + static_cast<uint64_t>(n);
        const auto r = cli::run_experiment(c);
        const double se = r.lhs.stddev / std::sqrt(static_cast<double>(c.trials));
        bool ok = r.lhs.mean > 0.0;
        if (n <= 2) ok &= r.lhs.mean + 3 * se < kMax;
        if (n == 4) ok &= std::abs(r.lhs.mean - kMax) <= 3 * r.lhs.stddev;
        o.pass &= ok;
        o.detail += fmt("n=%d %.4f+-%.4f ", n, r.lhs.mean, r.lhs.stddev);
    }
    return o;
}

Outcome determinism() {
    auto c = base_config();
    c.friend_charlie = ewfs::FriendKind::ghz(5);
    c.noise.p1 = 0.002;
    c.noise.p2 = 0.02;
    c.noise.p_readout = 0.01;
    c.decoder_peek = infer::DecoderKind::kRandomSingle;
    c.random_single_scope = cli::RandomSingleScope::kShot;
    c.shots = 2000;
    c.trials = 6;
    c.master_seed = 1100;
    std::vector<std::string> outs;
    for (int threads : {1, 1, 2, 4, 0}) {
        c.threads = threads;
        auto r = cli::run_experiment(c);
        std::string out = cli::to_csv(std::span(&r, 1));
        r.config.threads = 1;  // normalize the echoed thread count
        outs.push_back(out + cli::to_json(std::span(&r, 1)));
    }
    cli::SweepGrid g;
    g.base = c;
    g.kinds = {ewfs::FriendFamily::kGhz, ewfs::FriendFamily::kRandomUnitary};
    g.sizes = {1, 3};
    g.noise_levels = {0.0, 0.01};
    g.base.threads = 1;
    const std::string s1 = cli::to_csv(cli::run_sweep(g));
    g.base.threads = 3;
    const std::string s3 = cli::to_csv(cli::run_sweep(g));
    const bool same = std::all_of(outs.begin(), outs.end(), [&](const auto& s) { return s == outs[0]; });
    return {same && s1 == s3, fmt("experiment identical across %zu runs/thread counts: %s; sweep 1 vs 3 threads: %s",
                                  outs.size(), same ? "yes" : "no", s1 == s3 ? "yes" : "no")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> checks = {
        {"table-1-maxima", table_maxima},
        {"simulator-vs-closed-form", simulator_oracle},
        {"noiseless-sampled-ghz-to-17", noiseless_sampled_scale},
        {"depolarizing-scaling-law", scaling_law},
        {"noise-threshold-monotonicity", threshold_monotonicity},
        {"decoder-variance-ordering", decoder_variance},
        {"branch-factor-values", branch_values},
        {"validation-algebra", validation_algebra},
        {"depolarizing-threshold-solver", threshold_solver},
        {"random-unitary-friend", random_unitary_friend},
        {"determinism", determinism},
    };
    int failures = 0;
    for (size_t i = 0; i < checks.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = checks[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("[%2zu] %s %-30s %s (%.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL", checks[i].first, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    return failures;
}
