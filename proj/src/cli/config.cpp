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

#include "ewfslab/cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "ewfslab/lf/optimize.hpp"

namespace ewfslab::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::array<double, 3> parse_triple(std::string_view s, std::string_view what) {
    const auto parts = split_list(s);
    if (parts.size() != 3) throw ConfigError(std::string(what) + " needs three comma-separated values");
    return {parse_double(parts[0], what), parse_double(parts[1], what), parse_double(parts[2], what)};
}

double parse_probability(std::string_view s, std::string_view what) {
    const double p = parse_double(s, what);
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(what) + " must be in [0, 1]");
    return p;
}

template <typename F>
auto rethrow_as_config(std::string_view key, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
    }
}

}  // namespace

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::kExact: return "exact";
        case Mode::kAnalyticScaled: return "analytic_scaled";
        case Mode::kSampled: return "sampled";
    }
    return "?";
}

Mode parse_mode(std::string_view s) {
    for (Mode m : {Mode::kExact, Mode::kAnalyticScaled, Mode::kSampled}) {
        if (s == to_string(m)) return m;
    }
    throw ConfigError("unknown mode '" + std::string(s) + "'");
}

std::string_view to_string(AnglePreset p) {
    switch (p) {
        case AnglePreset::kOptimal: return "optimal";
        case AnglePreset::kHistorical: return "historical";
        case AnglePreset::kExplicit: return "explicit";
    }
    return "?";
}

AnglePreset parse_angle_preset(std::string_view s) {
    for (AnglePreset p : {AnglePreset::kOptimal, AnglePreset::kHistorical, AnglePreset::kExplicit}) {
        if (s == to_string(p)) return p;
    }
    throw ConfigError("unknown angle preset '" + std::string(s) + "'");
}

std::string_view to_string(RandomSingleScope s) {
    return s == RandomSingleScope::kTrial ? "trial" : "shot";
}

RandomSingleScope parse_random_single_scope(std::string_view s) {
    if (s == "trial") return RandomSingleScope::kTrial;
    if (s == "shot") return RandomSingleScope::kShot;
    throw ConfigError("random_single_scope must be trial or shot");
}

std::string_view to_string(ValidationScope s) {
    return s == ValidationScope::kFriendPrep ? "friend_prep" : "whole_circuit";
}

ValidationScope parse_validation_scope(std::string_view s) {
    if (s == "friend_prep") return ValidationScope::kFriendPrep;
    if (s == "whole_circuit") return ValidationScope::kWholeCircuit;
    throw ConfigError("validation_scope must be friend_prep or whole_circuit");
}

std::vector<std::string> split_list(std::string_view s, char sep) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    size_t start = 0;
    while (true) {
        const size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view s, std::string_view what) {
    const std::string t = trim(s);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
        throw ConfigError(std::string(what) + ": '" + t + "' is not a number");
    }
    return v;
}

int64_t parse_int(std::string_view s, std::string_view what) {
    const std::string t = trim(s);
    int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigError(std::string(what) + ": '" + t + "' is not an integer");
    }
    return v;
}

bool parse_bool(std::string_view s, std::string_view what) {
    const std::string t = trim(s);
    if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
    if (t == "0" || t == "false" || t == "no" || t == "off") return false;
    throw ConfigError(std::string(what) + ": '" + t + "' is not a boolean");
}

void EwfsConfig::validate() const {
    rethrow_as_config("charlie", [&] { friend_charlie.validate(); });
    rethrow_as_config("debbie", [&] { friend_debbie.validate(); });
    rethrow_as_config("noise", [&] { noise.validate(); });
    if (shots < 1) throw ConfigError("shots must be >= 1");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (shots_per_trajectory < 1) throw ConfigError("shots_per_trajectory must be >= 1");
    if (qubit_cap < 3 || qubit_cap > qsim::kMaxQubits) {
        throw ConfigError("qubit_cap must lie in [3, " + std::to_string(qsim::kMaxQubits) + "]");
    }
    if (threads < 0) throw ConfigError("threads must be >= 0 (0 = hardware concurrency)");
    if (!(sigma_k >= 0.0)) throw ConfigError("sigma_k must be >= 0");
    if (hamming_threshold < 0) throw ConfigError("hamming_threshold must be >= 0");
    for (const auto& [size, s] : shot_overrides) {
        if (size < 1 || s < 1) throw ConfigError("shot_overrides entries must be positive");
    }
    if (inequality == lf::InequalityName::kSemiBrukner && friend_debbie.n != 1) {
        throw ConfigError("semi_brukner needs a single-qubit Debbie");
    }
    if (mode == Mode::kExact && (noise.has_gate_noise() || noise.p_readout > 0.0)) {
        throw ConfigError("exact mode is noiseless; use analytic_scaled or sampled with noise");
    }
    if (mode == Mode::kAnalyticScaled) {
        if (noise.p_readout > 0.0) throw ConfigError("analytic_scaled mode does not model readout error");
        if (noise.has_gate_noise() && noise.scope != qsim::DepolarizingScope::kGlobal) {
            throw ConfigError("analytic_scaled mode requires global depolarizing scope");
        }
        if (noise.p1 >= 1.0 || noise.p2 >= 1.0) throw ConfigError("analytic_scaled needs p1, p2 < 1");
    }
    rethrow_as_config("decoder", [&] {
        (void)peek_decoder(friend_charlie);
        if (lf::InequalitySpec::get(inequality).uses_bob_peek()) (void)peek_decoder(friend_debbie);
    });
}

int EwfsConfig::shots_for_size(int charlie_size) const {
    int best_size = 0;
    int result = shots;
    for (const auto& [size, s] : shot_overrides) {
        if (size <= charlie_size && size >= best_size) {
            best_size = size;
            result = s;
        }
    }
    return result;
}

infer::DecoderKind EwfsConfig::peek_decoder_kind(const ewfs::FriendKind& kind) const {
    if (decoder_peek) return *decoder_peek;
    switch (kind.family) {
        case ewfs::FriendFamily::kGhz: return infer::DecoderKind::kMajorityVote;
        case ewfs::FriendFamily::kRandomUnitary: return infer::DecoderKind::kZeroVsRest;
        case ewfs::FriendFamily::kDicke: return infer::DecoderKind::kHammingThreshold;
    }
    return infer::DecoderKind::kMajorityVote;
}

infer::Decoder EwfsConfig::peek_decoder(const ewfs::FriendKind& kind) const {
    return infer::Decoder::make(peek_decoder_kind(kind), kind.n, hamming_threshold);
}

ewfs::MeasurementAngles resolve_angles(const EwfsConfig& config) {
    switch (config.angle_preset) {
        case AnglePreset::kExplicit: return config.angles;
        case AnglePreset::kHistorical: return ewfs::MeasurementAngles::historical();
        case AnglePreset::kOptimal: break;
    }
    static std::mutex mu;
    static std::map<lf::InequalityName, ewfs::MeasurementAngles> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(config.inequality);
    if (it == cache.end()) {
        const auto opt = lf::optimize_angles(lf::InequalitySpec::get(config.inequality));
        it = cache.emplace(config.inequality, opt.angles).first;
    }
    return it->second;
}

void set_config_value(EwfsConfig& c, std::string_view key_in, std::string_view value_in) {
    const std::string key = trim(key_in);
    const std::string v = trim(value_in);
    auto as_int = [&] {
        const int64_t x = parse_int(v, key);
        if (x < INT32_MIN || x > INT32_MAX) throw ConfigError(key + ": out of range");
        return static_cast<int>(x);
    };
    if (key == "charlie") {
        c.friend_charlie = rethrow_as_config(key, [&] { return ewfs::FriendKind::parse(v); });
    } else if (key == "debbie") {
        c.friend_debbie = rethrow_as_config(key, [&] { return ewfs::FriendKind::parse(v); });
    } else if (key == "angles") {
        c.angle_preset = parse_angle_preset(v);
    } else if (key == "theta") {
        c.angles.theta_deg = parse_triple(v, key);
        c.angle_preset = AnglePreset::kExplicit;
    } else if (key == "beta") {
        c.angles.beta_deg = parse_triple(v, key);
        c.angle_preset = AnglePreset::kExplicit;
    } else if (key == "inequality") {
        c.inequality = rethrow_as_config(key, [&] { return lf::parse_inequality(v); });
    } else if (key == "mode") {
        c.mode = parse_mode(v);
    } else if (key == "p1") {
        c.noise.p1 = parse_probability(v, key);
    } else if (key == "p2") {
        c.noise.p2 = parse_probability(v, key);
    } else if (key == "p_readout") {
        c.noise.p_readout = parse_probability(v, key);
    } else if (key == "depol_scope") {
        c.noise.scope = rethrow_as_config(key, [&] { return qsim::parse_depolarizing_scope(v); });
    } else if (key == "shots") {
        c.shots = as_int();
    } else if (key == "trials") {
        c.trials = as_int();
    } else if (key == "seed") {
        uint64_t s = 0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
        if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
            throw ConfigError("seed: '" + v + "' is not an unsigned 64-bit integer");
        }
        c.master_seed = s;
    } else if (key == "decoder") {
        if (v == "auto") {
            c.decoder_peek.reset();
        } else {
            c.decoder_peek = rethrow_as_config(key, [&] { return infer::parse_decoder_kind(v); });
        }
    } else if (key == "hamming_threshold") {
        c.hamming_threshold = as_int();
    } else if (key == "shots_per_trajectory") {
        c.shots_per_trajectory = as_int();
    } else if (key == "qubit_cap") {
        c.qubit_cap = as_int();
    } else if (key == "threads") {
        c.threads = as_int();
    } else if (key == "haar_resample") {
        c.haar_resample = parse_bool(v, key);
    } else if (key == "random_single_scope") {
        c.random_single_scope = parse_random_single_scope(v);
    } else if (key == "validation_scope") {
        c.validation_scope = parse_validation_scope(v);
    } else if (key == "sigma_k") {
        c.sigma_k = parse_double(v, key);
    } else if (key == "shot_overrides") {
        c.shot_overrides.clear();
        for (const auto& item : split_list(v)) {
            const auto kv = split_list(item, ':');
            if (kv.size() != 2) throw ConfigError("shot_overrides entries look like size:shots");
            c.shot_overrides.emplace_back(static_cast<int>(parse_int(kv[0], key)),
                                          static_cast<int>(parse_int(kv[1], key)));
        }
    } else if (key == "timing") {
        c.record_timing = parse_bool(v, key);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

EwfsConfig parse_config(std::istream& in, EwfsConfig base) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        try {
            set_config_value(base, t.substr(0, eq), t.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

EwfsConfig load_config_file(const std::string& path, EwfsConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    return parse_config(in, std::move(base));
}

std::string format_config(const EwfsConfig& c) {
    std::ostringstream o;
    auto triple = [](const std::array<double, 3>& a) {
        return fmt_double(a[0]) + "," + fmt_double(a[1]) + "," + fmt_double(a[2]);
    };
    o << "charlie = " << c.friend_charlie.spec() << "\n";
    o << "debbie = " << c.friend_debbie.spec() << "\n";
    if (c.angle_preset == AnglePreset::kExplicit) {
        o << "theta = " << triple(c.angles.theta_deg) << "\n";
        o << "beta = " << triple(c.angles.beta_deg) << "\n";
    }
    o << "angles = " << to_string(c.angle_preset) << "\n";
    o << "inequality = " << lf::to_string(c.inequality) << "\n";
    o << "mode = " << to_string(c.mode) << "\n";
    o << "p1 = " << fmt_double(c.noise.p1) << "\n";
    o << "p2 = " << fmt_double(c.noise.p2) << "\n";
    o << "p_readout = " << fmt_double(c.noise.p_readout) << "\n";
    o << "depol_scope = " << qsim::to_string(c.noise.scope) << "\n";
    o << "shots = " << c.shots << "\n";
    o << "trials = " << c.trials << "\n";
    o << "seed = " << c.master_seed << "\n";
    o << "decoder = " << (c.decoder_peek ? std::string(infer::to_string(*c.decoder_peek)) : "auto")
      << "\n";
    o << "hamming_threshold = " << c.hamming_threshold << "\n";
    o << "shots_per_trajectory = " << c.shots_per_trajectory << "\n";
    o << "qubit_cap = " << c.qubit_cap << "\n";
    o << "threads = " << c.threads << "\n";
    o << "haar_resample = " << (c.haar_resample ? "true" : "false") << "\n";
    o << "random_single_scope = " << to_string(c.random_single_scope) << "\n";
    o << "validation_scope = " << to_string(c.validation_scope) << "\n";
    o << "sigma_k = " << fmt_double(c.sigma_k) << "\n";
    o << "shot_overrides = ";
    for (size_t i = 0; i < c.shot_overrides.size(); ++i) {
        if (i) o << ",";
        o << c.shot_overrides[i].first << ":" << c.shot_overrides[i].second;
    }
    o << "\n";
    o << "timing = " << (c.record_timing ? "true" : "false") << "\n";
    return o.str();
}

}  // namespace ewfslab::cli
