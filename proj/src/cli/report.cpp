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

#include "ewfslab/cli/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ewfslab::cli {

using nlohmann::json;

namespace {

std::string g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

const char* tf(bool b) { return b ? "true" : "false"; }

json bounded_to_json(const branch::BoundedValue& v) {
    return {{"value", v.value}, {"flag", branch::to_string(v.flag)}};
}

branch::BoundedValue bounded_from_json(const json& j) {
    return {j.at("value").get<double>(), branch::parse_bound_flag(j.at("flag").get<std::string>())};
}

json counts_to_json(const validate::GateCounts& c) {
    return {{"singles", c.singles}, {"doubles", c.doubles}, {"exact", c.exact}};
}

validate::GateCounts counts_from_json(const json& j) {
    validate::GateCounts c;
    c.singles = j.at("singles").get<int64_t>();
    c.doubles = j.at("doubles").get<int64_t>();
    c.exact = j.at("exact").get<bool>();
    return c;
}

json config_to_json(const EwfsConfig& c) {
    json j;
    j["friend_charlie"] = c.friend_charlie.spec();
    j["friend_debbie"] = c.friend_debbie.spec();
    j["angle_preset"] = to_string(c.angle_preset);
    j["theta_deg"] = c.angles.theta_deg;
    j["beta_deg"] = c.angles.beta_deg;
    j["inequality"] = lf::to_string(c.inequality);
    j["mode"] = to_string(c.mode);
    j["noise"] = {{"p1", c.noise.p1},
                  {"p2", c.noise.p2},
                  {"p_readout", c.noise.p_readout},
                  {"scope", qsim::to_string(c.noise.scope)}};
    j["shots"] = c.shots;
    j["trials"] = c.trials;
    j["master_seed"] = c.master_seed;
    j["decoder_peek"] = c.decoder_peek ? json(infer::to_string(*c.decoder_peek)) : json(nullptr);
    j["hamming_threshold"] = c.hamming_threshold;
    j["shots_per_trajectory"] = c.shots_per_trajectory;
    j["qubit_cap"] = c.qubit_cap;
    j["threads"] = c.threads;
    j["haar_resample"] = c.haar_resample;
    j["random_single_scope"] = to_string(c.random_single_scope);
    j["validation_scope"] = to_string(c.validation_scope);
    j["sigma_k"] = c.sigma_k;
    j["shot_overrides"] = c.shot_overrides;
    j["record_timing"] = c.record_timing;
    return j;
}

EwfsConfig config_from_json(const json& j) {
    EwfsConfig c;
    c.friend_charlie = ewfs::FriendKind::parse(j.at("friend_charlie").get<std::string>());
    c.friend_debbie = ewfs::FriendKind::parse(j.at("friend_debbie").get<std::string>());
    c.angle_preset = parse_angle_preset(j.at("angle_preset").get<std::string>());
    c.angles.theta_deg = j.at("theta_deg").get<std::array<double, 3>>();
    c.angles.beta_deg = j.at("beta_deg").get<std::array<double, 3>>();
    c.inequality = lf::parse_inequality(j.at("inequality").get<std::string>());
    c.mode = parse_mode(j.at("mode").get<std::string>());
    const json& n = j.at("noise");
    c.noise.p1 = n.at("p1").get<double>();
    c.noise.p2 = n.at("p2").get<double>();
    c.noise.p_readout = n.at("p_readout").get<double>();
    c.noise.scope = qsim::parse_depolarizing_scope(n.at("scope").get<std::string>());
    c.shots = j.at("shots").get<int>();
    c.trials = j.at("trials").get<int>();
    c.master_seed = j.at("master_seed").get<uint64_t>();
    if (!j.at("decoder_peek").is_null()) {
        c.decoder_peek = infer::parse_decoder_kind(j.at("decoder_peek").get<std::string>());
    }
    c.hamming_threshold = j.at("hamming_threshold").get<int>();
    c.shots_per_trajectory = j.at("shots_per_trajectory").get<int>();
    c.qubit_cap = j.at("qubit_cap").get<int>();
    c.threads = j.at("threads").get<int>();
    c.haar_resample = j.at("haar_resample").get<bool>();
    c.random_single_scope = parse_random_single_scope(j.at("random_single_scope").get<std::string>());
    c.validation_scope = parse_validation_scope(j.at("validation_scope").get<std::string>());
    c.sigma_k = j.at("sigma_k").get<double>();
    c.shot_overrides = j.at("shot_overrides").get<std::vector<std::pair<int, int>>>();
    c.record_timing = j.at("record_timing").get<bool>();
    return c;
}

json record_to_json(const ResultRecord& r) {
    json j;
    j["config"] = config_to_json(r.config);
    if (!r.error.empty()) {
        j["error"] = r.error;
        j["error_category"] = r.error_category;
        return j;
    }
    j["decoder"] = r.decoder;
    json pairs = json::array();
    for (const auto& p : r.pairs) {
        json jp = {{"x", p.x},
                   {"y", p.y},
                   {"ab_mean", p.ab_mean},
                   {"ab_std", p.ab_std},
                   {"applications", counts_to_json(p.applications)}};
        jp["a_mean"] = p.a_mean ? json(*p.a_mean) : json(nullptr);
        jp["b_mean"] = p.b_mean ? json(*p.b_mean) : json(nullptr);
        pairs.push_back(std::move(jp));
    }
    j["pairs"] = std::move(pairs);
    j["lhs"] = {{"values", r.lhs.values},
                {"mean", r.lhs.mean},
                {"stddev", r.lhs.stddev},
                {"standard_error", r.lhs.standard_error}};
    j["violated"] = r.violated;
    j["certified"] = r.certified;
    j["branch"] = {{"interference", bounded_to_json(r.branch.interference)},
                   {"distinguishability", bounded_to_json(r.branch.distinguishability)},
                   {"branch_factor", bounded_to_json(r.branch.branch_factor)},
                   {"delta", r.branch.delta},
                   {"friend", r.branch.friend_kind ? json(r.branch.friend_kind->spec()) : json(nullptr)},
                   {"note", r.branch.note}};
    if (r.validation) {
        const auto& v = *r.validation;
        j["validation"] = {{"q", v.q},
                           {"x_tilde", v.x_tilde},
                           {"x_valid_lower", v.x_valid_lower},
                           {"q_min", v.q_min},
                           {"certified", v.certified}};
    } else {
        j["validation"] = nullptr;
    }
    j["validation_counts"] = r.validation_counts ? counts_to_json(*r.validation_counts) : json(nullptr);
    if (r.wall_time_s) j["wall_time_s"] = *r.wall_time_s;
    return j;
}

ResultRecord record_from_json(const json& j) {
    ResultRecord r;
    r.config = config_from_json(j.at("config"));
    if (j.contains("error")) {
        r.error = j.at("error").get<std::string>();
        r.error_category = j.value("error_category", std::string("runtime"));
        return r;
    }
    r.decoder = j.at("decoder").get<std::string>();
    for (const auto& jp : j.at("pairs")) {
        PairStatistics p;
        p.x = jp.at("x").get<int>();
        p.y = jp.at("y").get<int>();
        p.ab_mean = jp.at("ab_mean").get<double>();
        p.ab_std = jp.at("ab_std").get<double>();
        p.applications = counts_from_json(jp.at("applications"));
        if (!jp.at("a_mean").is_null()) p.a_mean = jp.at("a_mean").get<double>();
        if (!jp.at("b_mean").is_null()) p.b_mean = jp.at("b_mean").get<double>();
        r.pairs.push_back(p);
    }
    const json& l = j.at("lhs");
    r.lhs.values = l.at("values").get<std::vector<double>>();
    r.lhs.mean = l.at("mean").get<double>();
    r.lhs.stddev = l.at("stddev").get<double>();
    r.lhs.standard_error = l.at("standard_error").get<double>();
    r.violated = j.at("violated").get<bool>();
    r.certified = j.at("certified").get<bool>();
    const json& b = j.at("branch");
    r.branch.interference = bounded_from_json(b.at("interference"));
    r.branch.distinguishability = bounded_from_json(b.at("distinguishability"));
    r.branch.branch_factor = bounded_from_json(b.at("branch_factor"));
    r.branch.delta = b.at("delta").get<double>();
    if (!b.at("friend").is_null()) {
        r.branch.friend_kind = ewfs::FriendKind::parse(b.at("friend").get<std::string>());
    }
    r.branch.note = b.at("note").get<std::string>();
    if (!j.at("validation").is_null()) {
        const json& v = j.at("validation");
        validate::ValidationReport vr;
        vr.q = v.at("q").get<double>();
        vr.x_tilde = v.at("x_tilde").get<double>();
        vr.x_valid_lower = v.at("x_valid_lower").get<double>();
        vr.q_min = v.at("q_min").get<double>();
        vr.certified = v.at("certified").get<bool>();
        r.validation = vr;
    }
    if (!j.at("validation_counts").is_null()) r.validation_counts = counts_from_json(j.at("validation_counts"));
    if (j.contains("wall_time_s")) r.wall_time_s = j.at("wall_time_s").get<double>();
    return r;
}

}  // namespace

const char* const kCsvHeader =
    "mode,friend_kind,friend_size,branch_factor,bf_flag,p1,p2,p_readout,depol_scope,decoder,"
    "shots,trials,seed,inequality,lhs_mean,lhs_std,violated,certified,q_estimate";

OutputFormat parse_output_format(std::string_view s) {
    if (s == "csv") return OutputFormat::kCsv;
    if (s == "json") return OutputFormat::kJson;
    throw ConfigError("output format must be csv or json");
}

std::string csv_row(const ResultRecord& r) {
    const EwfsConfig& c = r.config;
    const bool ok = r.error.empty();
    std::ostringstream o;
    o << to_string(c.mode) << ',' << ewfs::to_string(c.friend_charlie.family) << ','
      << c.friend_charlie.n << ',';
    o << (ok ? g9(r.branch.branch_factor.value) : "") << ','
      << (ok ? std::string(branch::to_string(r.branch.branch_factor.flag)) : "") << ',';
    o << g9(c.noise.p1) << ',' << g9(c.noise.p2) << ',' << g9(c.noise.p_readout) << ','
      << qsim::to_string(c.noise.scope) << ',';
    o << (ok ? r.decoder : "") << ',' << c.shots_for_size(c.friend_charlie.n) << ',' << c.trials
      << ',' << c.master_seed << ',' << lf::to_string(c.inequality) << ',';
    if (ok) {
        o << g9(r.lhs.mean) << ',' << g9(r.lhs.stddev) << ',' << tf(r.violated) << ','
          << tf(r.certified) << ',';
        if (r.validation) o << g9(r.validation->q);
    } else {
        o << ",,,,";
    }
    return o.str();
}

std::string to_csv(std::span<const ResultRecord> records) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : records) out += csv_row(r) + "\n";
    return out;
}

std::string to_json(std::span<const ResultRecord> records) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(record_to_json(r));
    return arr.dump(2) + "\n";
}

std::vector<ResultRecord> records_from_json(std::string_view text) {
    const json arr = json::parse(text);
    if (!arr.is_array()) throw std::invalid_argument("expected a JSON array of records");
    std::vector<ResultRecord> out;
    for (const auto& j : arr) out.push_back(record_from_json(j));
    return out;
}

std::string render(std::span<const ResultRecord> records, OutputFormat format) {
    return format == OutputFormat::kCsv ? to_csv(records) : to_json(records);
}

void emit(std::span<const ResultRecord> records, OutputFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << render(records, format);
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace ewfslab::cli
