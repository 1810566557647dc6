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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "ewfslab/branch/branch_factor.hpp"
#include "ewfslab/cli/config.hpp"
#include "ewfslab/cli/experiment.hpp"
#include "ewfslab/cli/report.hpp"
#include "ewfslab/ewfs/scenario.hpp"
#include "ewfslab/infer/decoder.hpp"
#include "ewfslab/lf/inequality.hpp"
#include "ewfslab/lf/optimize.hpp"
#include "ewfslab/qsim/simulator.hpp"
#include "ewfslab/validate/validation.hpp"

namespace py = pybind11;
using namespace ewfslab;

namespace {

ewfs::MeasurementAngles make_angles(const std::array<double, 3>& theta, const std::array<double, 3>& beta) {
    ewfs::MeasurementAngles a;
    a.theta_deg = theta;
    a.beta_deg = beta;
    return a;
}

py::dict bounded(const branch::BoundedValue& v) {
    py::dict d;
    d["value"] = v.value;
    d["flag"] = std::string(branch::to_string(v.flag));
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Extended Wigner's friend simulation core";

    m.def("inequalities", [] {
        std::vector<std::string> out;
        for (auto n : lf::kAllInequalities) out.emplace_back(lf::to_string(n));
        return out;
    });

    m.def(
        "optimize_angles",
        [](const std::string& inequality, int starts, uint64_t seed) {
            lf::AngleOptimizerOptions opt;
            opt.starts = starts;
            opt.seed = seed;
            const auto r = lf::optimize_angles(lf::InequalitySpec::get(lf::parse_inequality(inequality)), opt);
            py::dict d;
            d["value"] = r.value;
            d["theta_deg"] = r.angles.theta_deg;
            d["beta_deg"] = r.angles.beta_deg;
            return d;
        },
        py::arg("inequality"), py::arg("starts") = 64, py::arg("seed") = lf::AngleOptimizerOptions{}.seed);

    m.def(
        "analytic_value",
        [](const std::string& inequality, const std::array<double, 3>& theta, const std::array<double, 3>& beta) {
            return lf::evaluate(lf::InequalitySpec::get(lf::parse_inequality(inequality)),
                                lf::analytic_expectations(make_angles(theta, beta)));
        },
        py::arg("inequality"), py::arg("theta_deg"), py::arg("beta_deg"));

    m.def(
        "exact_correlator",
        [](const std::string& charlie, const std::string& debbie, const std::array<double, 3>& theta,
           const std::array<double, 3>& beta, int x, int y) {
            const auto ck = ewfs::FriendKind::parse(charlie);
            const auto dk = ewfs::FriendKind::parse(debbie);
            const auto c = ewfs::build_ewfs_circuit(ck, dk, make_angles(theta, beta), ewfs::setting_from_index(x),
                                                    ewfs::setting_from_index(y));
            const auto st = qsim::simulate(c.circuit);
            auto dec = [](const ewfs::FriendKind& k, int s) {
                return s == 1 ? infer::Decoder::make(k.family == ewfs::FriendFamily::kGhz
                                                         ? infer::DecoderKind::kMajorityVote
                                                         : infer::DecoderKind::kZeroVsRest,
                                                     k.n)
                              : infer::Decoder::sign_single(1, 0);
            };
            return infer::exact_pair_expectation(st, dec(ck, x), c.alice_measured, dec(dk, y), c.bob_measured);
        },
        py::arg("charlie"), py::arg("debbie"), py::arg("theta_deg"), py::arg("beta_deg"), py::arg("x"),
        py::arg("y"));

    m.def("branch_factor", [](const std::string& friend_spec) {
        const auto r = branch::branch_factor(ewfs::FriendKind::parse(friend_spec));
        py::dict d;
        d["interference"] = bounded(r.interference);
        d["distinguishability"] = bounded(r.distinguishability);
        d["branch_factor"] = bounded(r.branch_factor);
        d["delta"] = r.delta;
        d["note"] = r.note;
        return d;
    });

    m.def("worst_case_valid_x", &validate::worst_case_valid_x, py::arg("x_tilde"), py::arg("q"));
    m.def("min_valid_probability", &validate::min_valid_probability, py::arg("x_tilde_max"));
    m.def(
        "depolarizing_fidelity",
        [](int64_t singles, int64_t doubles, double p1, double p2) {
            return validate::depolarizing_fidelity({singles, doubles, true}, p1, p2);
        },
        py::arg("singles"), py::arg("doubles"), py::arg("p1"), py::arg("p2"));
    m.def(
        "max_two_qubit_error",
        [](int64_t singles, int64_t doubles, double ratio, double target) {
            return validate::max_two_qubit_error({singles, doubles, true}, ratio, target);
        },
        py::arg("singles"), py::arg("doubles"), py::arg("ratio"), py::arg("target_fidelity"));

    m.def(
        "run_config",
        [](const std::string& config_text, const std::string& format) {
            std::istringstream in(config_text);
            const auto cfg = cli::parse_config(in);
            std::vector<cli::ResultRecord> recs;
            {
                py::gil_scoped_release release;
                recs.push_back(cli::run_experiment(cfg));
            }
            return cli::render(recs, cli::parse_output_format(format));
        },
        py::arg("config_text"), py::arg("format") = "json",
        "Runs one experiment from flat key = value text and returns the rendered record.");

    m.attr("CSV_HEADER") = cli::kCsvHeader;

    py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<cli::InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
}
