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

// ewfslab command-line tool.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error,
// 3 infeasible experiment size, 4 I/O failure. Failures print one line
//   ewfslab: error[<category>]: <message>
// on stderr, with category one of usage, config, infeasible, io, runtime.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ewfslab/branch/branch_factor.hpp"
#include "ewfslab/cli/config.hpp"
#include "ewfslab/cli/experiment.hpp"
#include "ewfslab/cli/report.hpp"
#include "ewfslab/ewfs/scenario.hpp"
#include "ewfslab/lf/inequality.hpp"
#include "ewfslab/lf/optimize.hpp"
#include "ewfslab/validate/validation.hpp"

namespace {

using namespace ewfslab;

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

/// "1,3,5" or "start:stop[:step]" (inclusive), or a mix of both.
std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& item : cli::split_list(s)) {
        const auto parts = cli::split_list(item, ':');
        if (parts.size() == 1) {
            out.push_back(static_cast<int>(cli::parse_int(parts[0], "list")));
        } else if (parts.size() == 2 || parts.size() == 3) {
            const auto a = cli::parse_int(parts[0], "range");
            const auto b = cli::parse_int(parts[1], "range");
            const auto step = parts.size() == 3 ? cli::parse_int(parts[2], "range") : 1;
            if (step <= 0) throw cli::ConfigError("range step must be positive");
            for (auto v = a; v <= b; v += step) out.push_back(static_cast<int>(v));
        } else {
            throw cli::ConfigError("bad list item '" + item + "'");
        }
    }
    return out;
}

std::string output_path(const std::string& path) {
    if (path.empty() || path == "-") return path;
    const char* dir = std::getenv("EWFSLAB_OUTPUT_DIR");
    std::filesystem::path p(path);
    if (dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
    return p.string();
}

void write_output(const std::string& text, const std::string& path) {
    const std::string resolved = output_path(path);
    if (resolved.empty() || resolved == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(resolved, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + resolved + "' for writing");
    out << text;
    if (!out.flush()) throw IoError("failed writing '" + resolved + "'");
}

/// Options shared by `run` and `sweep`.
struct ExperimentOptions {
    std::string config_file;
    std::vector<std::string> sets;
    std::string format = "csv";
    std::string output;
    std::optional<std::string> charlie, debbie, inequality, mode, angles, decoder, scope;
    std::optional<int> shots, trials, threads, qubit_cap, spt;
    std::optional<uint64_t> seed;
    std::optional<double> p1, p2, p_readout;
    bool timing = false;

    void attach(CLI::App* app) {
        app->add_option("-c,--config", config_file, "Flat key = value config file");
        app->add_option("--set", sets, "Override one config key (key=value); repeatable");
        app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        app->add_option("-o,--output", output, "Output file (default stdout); relative paths go under $EWFSLAB_OUTPUT_DIR");
        app->add_option("--charlie", charlie, "Charlie's friend, e.g. ghz:5, random_unitary:3:42, dicke:4:2");
        app->add_option("--debbie", debbie, "Debbie's friend");
        app->add_option("--inequality", inequality, "genuine_lf, bell_i3322, brukner, semi_brukner, bell_non_lf");
        app->add_option("--mode", mode, "exact, analytic_scaled or sampled");
        app->add_option("--angles", angles, "optimal, historical or explicit");
        app->add_option("--decoder", decoder, "PEEK decoder or auto");
        app->add_option("--depol-scope", scope, "global or local");
        app->add_option("--shots", shots);
        app->add_option("--trials", trials);
        app->add_option("--threads", threads, "Worker threads (0 = all cores)");
        app->add_option("--qubit-cap", qubit_cap);
        app->add_option("--shots-per-trajectory", spt);
        app->add_option("--seed", seed);
        app->add_option("--p1", p1);
        app->add_option("--p2", p2);
        app->add_option("--p-readout", p_readout);
        app->add_flag("--timing", timing, "Record wall time (makes output non-reproducible)");
    }

    cli::EwfsConfig build() const {
        cli::EwfsConfig c;
        if (!config_file.empty()) {
            try {
                c = cli::load_config_file(config_file);
            } catch (const cli::ConfigError&) {
                throw;
            } catch (const std::exception& e) {
                throw IoError(e.what());
            }
        }
        auto set = [&](const char* key, const auto& v) {
            if (!v) return;
            std::ostringstream s;
            s.precision(17);
            s << *v;
            cli::set_config_value(c, key, s.str());
        };
        set("charlie", charlie);
        set("debbie", debbie);
        set("inequality", inequality);
        set("mode", mode);
        set("angles", angles);
        set("decoder", decoder);
        set("depol_scope", scope);
        set("shots", shots);
        set("trials", trials);
        set("threads", threads);
        set("qubit_cap", qubit_cap);
        set("shots_per_trajectory", spt);
        set("seed", seed);
        set("p1", p1);
        set("p2", p2);
        set("p_readout", p_readout);
        if (timing) c.record_timing = true;
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw cli::ConfigError("--set expects key=value, got '" + kv + "'");
            cli::set_config_value(c, kv.substr(0, eq), kv.substr(eq + 1));
        }
        return c;
    }
};

int fail(const std::string& category, const std::string& message, int code) {
    std::cerr << "ewfslab: error[" << category << "]: " << message << "\n";
    return code;
}

std::string branch_text(const branch::BranchFactorReport& r) {
    std::ostringstream o;
    auto line = [&](const char* name, const branch::BoundedValue& v) {
        o << name << " = " << g9(v.value) << " (" << branch::to_string(v.flag) << ")\n";
    };
    if (r.friend_kind) o << "friend = " << r.friend_kind->spec() << "\n";
    line("interference_complexity", r.interference);
    line("distinguishability_complexity", r.distinguishability);
    line("branch_factor", r.branch_factor);
    o << "delta = " << g9(r.delta) << "\n";
    if (!r.note.empty()) o << "note = " << r.note << "\n";
    return o.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extended Wigner's friend simulations and local-friendliness analysis"};
    app.require_subcommand(1);

    // run
    ExperimentOptions run_opts;
    auto* run = app.add_subcommand("run", "Run one experiment and print its record");
    run_opts.attach(run);

    // sweep
    ExperimentOptions sweep_opts;
    std::string sweep_kinds = "ghz";
    std::string sweep_sizes;
    std::string sweep_noise = "0";
    std::string sweep_strategies;
    double p1_ratio = 1.0;
    auto* sweep = app.add_subcommand("sweep", "Run a kinds x sizes x noise x decoder grid");
    sweep_opts.attach(sweep);
    sweep->add_option("--kinds", sweep_kinds, "Friend families, comma-separated");
    sweep->add_option("--sizes", sweep_sizes, "Charlie sizes: list and/or start:stop[:step]")->required();
    sweep->add_option("--noise", sweep_noise, "Two-qubit depolarizing levels, comma-separated");
    sweep->add_option("--p1-ratio", p1_ratio, "p1 = ratio * p2");
    sweep->add_option("--strategies", sweep_strategies, "PEEK decoders, comma-separated");

    // angles
    std::string angles_inequality = "all";
    lf::AngleOptimizerOptions opt_options;
    auto* angles = app.add_subcommand("angles", "Optimize measurement angles for inequalities");
    angles->add_option("--inequality", angles_inequality, "Inequality name or all");
    angles->add_option("--starts", opt_options.starts, "Multi-start count");
    angles->add_option("--seed", opt_options.seed, "Start-point seed");

    // oracle
    std::string oracle_theta, oracle_beta;
    auto* oracle = app.add_subcommand("oracle", "Closed-form inequality values at given and optimal angles");
    oracle->add_option("--theta", oracle_theta, "Alice angles in degrees (default historical)");
    oracle->add_option("--beta", oracle_beta, "Bob angles in degrees (default historical)");

    // branch-factor
    std::string bf_friend;
    std::string bf_two_random;
    auto* bf = app.add_subcommand("branch-factor", "Complexity bounds of a friend's pointer states");
    auto* bf_friend_opt = bf->add_option("--friend", bf_friend, "Friend spec, e.g. ghz:5");
    bf->add_option("--two-random", bf_two_random, "n,d0,d1 for two random circuits")->excludes(bf_friend_opt);

    // resources
    std::string res_kind = "ghz";
    std::string res_sizes = "1:17:2";
    uint64_t res_seed = 0;
    auto* resources = app.add_subcommand("resources", "Gate counts and branch factor per friend size (CSV)");
    resources->add_option("--kind", res_kind, "ghz, random_unitary or dicke");
    resources->add_option("--sizes", res_sizes, "Sizes: list and/or start:stop[:step]");
    resources->add_option("--seed", res_seed, "Haar seed for random_unitary");

    // validate
    std::optional<double> v_x, v_q, v_xmax, v_p1, v_p2, v_target;
    int64_t v_singles = 0, v_doubles = 0;
    double v_ratio = 0.1;
    auto* val = app.add_subcommand("validate", "Certification bound calculators");
    val->add_option("--x-tilde", v_x, "Measured LHS + 2");
    val->add_option("--q", v_q, "Preparation validity probability");
    val->add_option("--x-tilde-max", v_xmax, "Largest achievable LHS + 2");
    val->add_option("--singles", v_singles);
    val->add_option("--doubles", v_doubles);
    val->add_option("--p1", v_p1);
    val->add_option("--p2", v_p2);
    val->add_option("--target-fidelity", v_target, "Solve for the largest p2 reaching this fidelity");
    val->add_option("--ratio", v_ratio, "p1 / p2 for the solver");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        if (*run) {
            const auto rec = cli::run_experiment(run_opts.build());
            const std::vector<cli::ResultRecord> recs{rec};
            write_output(cli::render(recs, cli::parse_output_format(run_opts.format)), run_opts.output);
        } else if (*sweep) {
            cli::SweepGrid grid;
            grid.base = sweep_opts.build();
            for (const auto& k : cli::split_list(sweep_kinds)) grid.kinds.push_back(ewfs::parse_friend_family(k));
            grid.sizes = parse_int_list(sweep_sizes);
            for (const auto& p : cli::split_list(sweep_noise)) grid.noise_levels.push_back(cli::parse_double(p, "noise"));
            for (const auto& s : cli::split_list(sweep_strategies)) {
                grid.strategies.push_back(infer::parse_decoder_kind(s));
            }
            grid.p1_ratio = p1_ratio;
            const auto recs = cli::run_sweep(grid);
            write_output(cli::render(recs, cli::parse_output_format(sweep_opts.format)), sweep_opts.output);
            for (const auto& r : recs) {
                if (!r.error.empty()) {
                    std::cerr << "ewfslab: warning[" << r.error_category << "]: cell "
                              << r.config.friend_charlie.spec() << " p2=" << g9(r.config.noise.p2)
                              << ": " << r.error << "\n";
                }
            }
        } else if (*angles) {
            std::vector<lf::InequalityName> names;
            if (angles_inequality == "all") {
                names.assign(lf::kAllInequalities.begin(), lf::kAllInequalities.end());
            } else {
                names.push_back(lf::parse_inequality(angles_inequality));
            }
            std::cout << "inequality,value,theta1,theta2,theta3,beta1,beta2,beta3\n";
            for (auto n : names) {
                const auto r = lf::optimize_angles(lf::InequalitySpec::get(n), opt_options);
                std::cout << lf::to_string(n) << ',' << g9(r.value);
                for (double t : r.angles.theta_deg) std::cout << ',' << g9(t);
                for (double b : r.angles.beta_deg) std::cout << ',' << g9(b);
                std::cout << "\n";
            }
        } else if (*oracle) {
            ewfs::MeasurementAngles a = ewfs::MeasurementAngles::historical();
            auto triple = [](const std::string& s, std::array<double, 3>& dst) {
                const auto parts = cli::split_list(s);
                if (parts.size() != 3) throw cli::ConfigError("angle lists need three values");
                for (size_t i = 0; i < 3; ++i) dst[i] = cli::parse_double(parts[i], "angle");
            };
            if (!oracle_theta.empty()) triple(oracle_theta, a.theta_deg);
            if (!oracle_beta.empty()) triple(oracle_beta, a.beta_deg);
            std::cout << "inequality,value_at_given_angles,optimal_value\n";
            for (auto n : lf::kAllInequalities) {
                const auto spec = lf::InequalitySpec::get(n);
                const double given = lf::evaluate(spec, lf::analytic_expectations(a));
                const double best = lf::optimize_angles(spec).value;
                std::cout << lf::to_string(n) << ',' << g9(given) << ',' << g9(best) << "\n";
            }
        } else if (*bf) {
            if (!bf_two_random.empty()) {
                const auto v = parse_int_list(bf_two_random);
                if (v.size() != 3) throw cli::ConfigError("--two-random expects n,d0,d1");
                std::cout << branch_text(branch::two_random_circuit_bounds(v[0], v[1], v[2]));
            } else {
                if (bf_friend.empty()) throw cli::ConfigError("give --friend or --two-random");
                ewfs::FriendKind kind;
                try {
                    kind = ewfs::FriendKind::parse(bf_friend);
                } catch (const std::exception& e) {
                    throw cli::ConfigError(e.what());
                }
                std::cout << branch_text(branch::branch_factor(kind));
            }
        } else if (*resources) {
            const auto family = ewfs::parse_friend_family(res_kind);
            std::cout << "friend,friend_size,branch_factor,bf_flag,prep_singles,prep_doubles,"
                         "prep_exact,circuit_singles,circuit_doubles,circuit_exact\n";
            for (int n : parse_int_list(res_sizes)) {
                ewfs::FriendKind kind = family == ewfs::FriendFamily::kGhz ? ewfs::FriendKind::ghz(n)
                                        : family == ewfs::FriendFamily::kRandomUnitary
                                            ? ewfs::FriendKind::random_unitary(n, res_seed)
                                            : ewfs::FriendKind::dicke(n, std::max(1, n / 2));
                const auto b = branch::branch_factor(kind);
                const auto c = ewfs::build_ewfs_circuit(kind, ewfs::FriendKind::ghz(1),
                                                        ewfs::MeasurementAngles::historical(),
                                                        ewfs::Setting::kReverse1, ewfs::Setting::kReverse1);
                const auto prep = validate::count_gates(c.circuit.gates().subspan(0, c.prep_gate_count));
                const auto whole = validate::count_gates(c.circuit);
                std::cout << kind.spec() << ',' << n << ',' << g9(b.branch_factor.value) << ','
                          << branch::to_string(b.branch_factor.flag) << ',' << prep.singles << ','
                          << prep.doubles << ',' << (prep.exact ? "true" : "false") << ','
                          << whole.singles << ',' << whole.doubles << ','
                          << (whole.exact ? "true" : "false") << "\n";
            }
        } else if (*val) {
            bool any = false;
            if (v_x && v_q) {
                std::cout << "worst_case_valid_x = " << g9(validate::worst_case_valid_x(*v_x, *v_q)) << "\n";
                any = true;
            }
            if (v_xmax) {
                std::cout << "min_valid_probability = " << g9(validate::min_valid_probability(*v_xmax)) << "\n";
                any = true;
            }
            const validate::GateCounts counts{v_singles, v_doubles, true};
            if (v_p1 || v_p2) {
                std::cout << "depolarizing_fidelity = "
                          << g9(validate::depolarizing_fidelity(counts, v_p1.value_or(0.0), v_p2.value_or(0.0)))
                          << "\n";
                any = true;
            }
            if (v_target) {
                std::cout << "max_two_qubit_error = "
                          << g9(validate::max_two_qubit_error(counts, v_ratio, *v_target)) << "\n";
                any = true;
            }
            if (!any) throw cli::ConfigError("nothing to compute; see validate --help");
        }
    } catch (const cli::ConfigError& e) {
        return fail("config", e.what(), 2);
    } catch (const cli::InfeasibleError& e) {
        return fail("infeasible", e.what(), 3);
    } catch (const IoError& e) {
        return fail("io", e.what(), 4);
    } catch (const std::invalid_argument& e) {
        return fail("config", e.what(), 2);
    } catch (const std::exception& e) {
        return fail("runtime", e.what(), 1);
    }
    return 0;
}
