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

#include "ewfslab/cli/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include "ewfslab/ewfs/scenario.hpp"
#include "ewfslab/infer/decoder.hpp"
#include "ewfslab/qsim/noise.hpp"
#include "ewfslab/qsim/simulator.hpp"

namespace ewfslab::cli {

namespace {

using ewfs::Setting;

constexpr uint64_t kUnitStreamSalt = 0x5EED0F5EEDULL;
constexpr uint64_t kDecoderStreamId = 0xDEC0DE;

template <typename F>
void parallel_for(size_t n, int threads, F&& body) {
    size_t workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                  : static_cast<size_t>(std::max(threads, 1));
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto loop = [&] {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                next.store(n);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (size_t w = 1; w < workers; ++w) pool.emplace_back(loop);
    loop();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

/// Probability of every local outcome on `measured` (index bit i = measured[i]).
std::vector<double> marginal_distribution(const qsim::StateVector& state,
                                          std::span<const int> measured) {
    std::vector<double> p(size_t{1} << measured.size(), 0.0);
    const auto amps = state.amplitudes();
    for (uint64_t z = 0; z < amps.size(); ++z) {
        const double w = std::norm(amps[z]);
        if (w != 0.0) p[qsim::gather_bits(z, measured)] += w;
    }
    return p;
}

class OutcomeSampler {
   public:
    explicit OutcomeSampler(const std::vector<double>& p) : cdf_(p.size()) {
        double acc = 0.0;
        for (size_t i = 0; i < p.size(); ++i) {
            acc += p[i];
            cdf_[i] = acc;
        }
    }
    uint64_t sample(qsim::RngStream& rng) const {
        const double u = rng.uniform() * cdf_.back();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<uint64_t>(std::min<ptrdiff_t>(it - cdf_.begin(),
                                                         static_cast<ptrdiff_t>(cdf_.size()) - 1));
    }

   private:
    std::vector<double> cdf_;
};

infer::Decoder side_decoder(const EwfsConfig& cfg, const ewfs::FriendKind& kind, Setting s) {
    if (s == Setting::kPeek) return cfg.peek_decoder(kind);
    return infer::Decoder::sign_single(1, 0);
}

/// RandomSingle is a uniform mixture of SignSingle decoders; everything else is itself.
std::vector<infer::Decoder> pure_components(const infer::Decoder& d) {
    if (d.deterministic()) return {d};
    std::vector<infer::Decoder> out;
    for (int p = 0; p < d.register_size(); ++p) {
        out.push_back(infer::Decoder::sign_single(d.register_size(), p));
    }
    return out;
}

double exact_side(const qsim::StateVector& st, const infer::Decoder& d, std::span<const int> q) {
    const auto parts = pure_components(d);
    double s = 0.0;
    for (const auto& c : parts) s += infer::exact_expectation(st, c, q);
    return s / static_cast<double>(parts.size());
}

double exact_both(const qsim::StateVector& st, const infer::Decoder& da, std::span<const int> qa,
                  const infer::Decoder& db, std::span<const int> qb) {
    const auto pa = pure_components(da);
    const auto pb = pure_components(db);
    double s = 0.0;
    for (const auto& a : pa) {
        for (const auto& b : pb) s += infer::exact_pair_expectation(st, a, qa, b, qb);
    }
    return s / static_cast<double>(pa.size() * pb.size());
}

/// Value of the decoder on the maximally mixed register.
double mixed_value(const infer::Decoder& d) {
    if (!d.deterministic()) return 0.0;
    const auto v = infer::decoder_as_diagonal(d);
    double s = 0.0;
    for (int8_t x : v) s += x;
    return s / static_cast<double>(v.size());
}

struct Estimate {
    double ab = 0.0;
    double a = 0.0;
    double b = 0.0;
};

struct PairContext {
    int x = 1;
    int y = 1;
    std::unique_ptr<ewfs::EwfsCircuit> shared;  // null when circuits differ per trial
    std::unique_ptr<OutcomeSampler> ideal_sampler;
    std::optional<Estimate> exact;  // shared exact estimate
};

ewfs::FriendKind trial_kind(const EwfsConfig& cfg, const ewfs::FriendKind& kind, int trial,
                            uint64_t salt) {
    if (!cfg.haar_resample || kind.family != ewfs::FriendFamily::kRandomUnitary) return kind;
    ewfs::FriendKind k = kind;
    k.seed = qsim::derive_seed(kind.seed, {static_cast<uint64_t>(trial), salt});
    return k;
}

bool circuits_vary_by_trial(const EwfsConfig& cfg) {
    return cfg.haar_resample && (cfg.friend_charlie.family == ewfs::FriendFamily::kRandomUnitary ||
                                 cfg.friend_debbie.family == ewfs::FriendFamily::kRandomUnitary);
}

ewfs::EwfsCircuit build_for_trial(const EwfsConfig& cfg, int trial, int x, int y) {
    return ewfs::build_ewfs_circuit(trial_kind(cfg, cfg.friend_charlie, trial, 0),
                                    trial_kind(cfg, cfg.friend_debbie, trial, 1), cfg.angles,
                                    ewfs::setting_from_index(x), ewfs::setting_from_index(y));
}

std::vector<int> measured_list(const ewfs::EwfsCircuit& c) {
    std::vector<int> m = c.alice_measured;
    m.insert(m.end(), c.bob_measured.begin(), c.bob_measured.end());
    return m;
}

Estimate exact_estimate(const EwfsConfig& cfg, const ewfs::EwfsCircuit& c) {
    const qsim::StateVector st = qsim::simulate(c.circuit);
    const auto da = side_decoder(cfg, cfg.friend_charlie, c.x);
    const auto db = side_decoder(cfg, cfg.friend_debbie, c.y);
    Estimate e;
    e.ab = exact_both(st, da, c.alice_measured, db, c.bob_measured);
    e.a = exact_side(st, da, c.alice_measured);
    e.b = exact_side(st, db, c.bob_measured);
    if (cfg.mode == Mode::kAnalyticScaled && cfg.noise.has_gate_noise()) {
        const auto apps = validate::count_gate_applications(c.circuit.gates());
        const double f = validate::depolarizing_fidelity(apps, cfg.noise.p1, cfg.noise.p2);
        const double ma = mixed_value(da);
        const double mb = mixed_value(db);
        e.ab = f * e.ab + (1.0 - f) * ma * mb;
        e.a = f * e.a + (1.0 - f) * ma;
        e.b = f * e.b + (1.0 - f) * mb;
    }
    return e;
}

class ShotAccumulator {
   public:
    ShotAccumulator(const EwfsConfig& cfg, const ewfs::EwfsCircuit& c, qsim::RngStream& dec_rng)
        : cfg_(cfg),
          na_(static_cast<int>(c.alice_measured.size())),
          nb_(static_cast<int>(c.bob_measured.size())),
          da_(bind(side_decoder(cfg, cfg.friend_charlie, c.x), dec_rng)),
          db_(bind(side_decoder(cfg, cfg.friend_debbie, c.y), dec_rng)),
          dec_rng_(dec_rng) {
        for (int i = 0; i < na_ + nb_; ++i) positions_.push_back(i);
    }

    void add(uint64_t local, qsim::RngStream& rng) {
        const qsim::Bitstring all = qsim::read_out(local, positions_, cfg_.noise.p_readout, rng);
        const uint64_t mask_a = (uint64_t{1} << na_) - 1;
        const qsim::Bitstring bits_a{all.bits & mask_a, na_};
        const qsim::Bitstring bits_b{all.bits >> na_, nb_};
        const int a = infer::decode(da_, bits_a, dec_rng_);
        const int b = infer::decode(db_, bits_b, dec_rng_);
        sum_a_ += a;
        sum_b_ += b;
        sum_ab_ += a * b;
        ++count_;
    }

    Estimate result() const {
        const double n = static_cast<double>(count_);
        return {static_cast<double>(sum_ab_) / n, static_cast<double>(sum_a_) / n,
                static_cast<double>(sum_b_) / n};
    }

   private:
    infer::Decoder bind(const infer::Decoder& d, qsim::RngStream& rng) const {
        if (d.kind() == infer::DecoderKind::kRandomSingle &&
            cfg_.random_single_scope == RandomSingleScope::kTrial) {
            return infer::Decoder::sign_single(
                d.register_size(), static_cast<int>(rng.below(static_cast<uint64_t>(d.register_size()))));
        }
        return d;
    }

    const EwfsConfig& cfg_;
    int na_;
    int nb_;
    infer::Decoder da_;
    infer::Decoder db_;
    qsim::RngStream& dec_rng_;
    std::vector<int> positions_;
    int64_t sum_a_ = 0;
    int64_t sum_b_ = 0;
    int64_t sum_ab_ = 0;
    int64_t count_ = 0;
};

Estimate sampled_estimate(const EwfsConfig& cfg, const ewfs::EwfsCircuit& c,
                          const OutcomeSampler* ideal_sampler, int shots, qsim::RngStream& rng) {
    qsim::RngStream dec_rng = rng.split(kDecoderStreamId);
    ShotAccumulator acc(cfg, c, dec_rng);
    const std::vector<int> measured = measured_list(c);

    std::unique_ptr<OutcomeSampler> own_ideal;
    auto ideal = [&]() -> const OutcomeSampler& {
        if (ideal_sampler) return *ideal_sampler;
        if (!own_ideal) {
            own_ideal = std::make_unique<OutcomeSampler>(
                marginal_distribution(qsim::simulate(c.circuit), measured));
        }
        return *own_ideal;
    };

    if (!cfg.noise.has_gate_noise()) {
        const OutcomeSampler& s = ideal();
        for (int i = 0; i < shots; ++i) acc.add(s.sample(rng), rng);
        return acc.result();
    }

    qsim::TrajectoryRunner runner(c.circuit, cfg.noise);
    int remaining = shots;
    while (remaining > 0) {
        const int k = std::min(remaining, cfg.shots_per_trajectory);
        const qsim::StateVector& st = runner.run(rng);
        if (runner.last_was_ideal()) {
            if (!ideal_sampler && !own_ideal) {
                own_ideal = std::make_unique<OutcomeSampler>(marginal_distribution(runner.ideal(), measured));
            }
            const OutcomeSampler& s = ideal();
            for (int i = 0; i < k; ++i) acc.add(s.sample(rng), rng);
        } else {
            const OutcomeSampler s(marginal_distribution(st, measured));
            for (int i = 0; i < k; ++i) acc.add(s.sample(rng), rng);
        }
        remaining -= k;
    }
    return acc.result();
}

void check_feasible(const EwfsConfig& cfg) {
    for (const auto* k : {&cfg.friend_charlie, &cfg.friend_debbie}) {
        if (k->within_size_limits()) continue;
        if (k->family == ewfs::FriendFamily::kRandomUnitary) {
            throw InfeasibleError("random_unitary friends are limited to " +
                                  std::to_string(ewfs::kMaxRandomUnitaryQubits) + " qubits (got " +
                                  std::to_string(k->n) + ")");
        }
        if (k->family == ewfs::FriendFamily::kDicke) {
            throw InfeasibleError("dicke friends are limited to " +
                                  std::to_string(ewfs::kMaxDickeQubits) + " qubits");
        }
    }
    if (cfg.total_qubits() > cfg.qubit_cap) {
        throw InfeasibleError("experiment needs " + std::to_string(cfg.total_qubits()) +
                              " qubits, above the cap of " + std::to_string(cfg.qubit_cap));
    }
}

}  // namespace

std::vector<std::pair<int, int>> required_pairs(const lf::InequalitySpec& spec) {
    auto pairs = spec.correlator_pairs();
    auto has = [&](auto pred) { return std::any_of(pairs.begin(), pairs.end(), pred); };
    for (int i = 1; i <= 3; ++i) {
        if (spec.a_coef[i - 1] != 0.0 && !has([&](const auto& p) { return p.first == i; })) {
            pairs.emplace_back(i, 2);
        }
        if (spec.b_coef[i - 1] != 0.0 && !has([&](const auto& p) { return p.second == i; })) {
            pairs.emplace_back(2, i);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

ResultRecord run_experiment(const EwfsConfig& config_in) {
    const auto t0 = std::chrono::steady_clock::now();
    check_feasible(config_in);
    config_in.validate();

    ResultRecord rec;
    rec.config = config_in;
    rec.config.angles = resolve_angles(config_in);
    const EwfsConfig& cfg = rec.config;
    rec.decoder = cfg.peek_decoder(cfg.friend_charlie).label();

    const auto spec = lf::InequalitySpec::get(cfg.inequality);
    const auto pairs = required_pairs(spec);
    const bool varies = circuits_vary_by_trial(cfg);
    const int shots = cfg.shots_for_size(cfg.friend_charlie.n);
    const size_t trials = static_cast<size_t>(cfg.trials);

    // Marginal sources: the first pair carrying each needed setting.
    std::array<int, 3> a_source{-1, -1, -1};
    std::array<int, 3> b_source{-1, -1, -1};
    for (int i = 0; i < 3; ++i) {
        for (size_t p = 0; p < pairs.size(); ++p) {
            if (spec.a_coef[i] != 0.0 && a_source[i] < 0 && pairs[p].first == i + 1) a_source[i] = static_cast<int>(p);
            if (spec.b_coef[i] != 0.0 && b_source[i] < 0 && pairs[p].second == i + 1) b_source[i] = static_cast<int>(p);
        }
    }

    std::vector<std::vector<Estimate>> est(pairs.size(), std::vector<Estimate>(trials));
    std::optional<validate::GateCounts> prep_counts;
    std::optional<validate::GateCounts> whole_counts;

    for (size_t p = 0; p < pairs.size(); ++p) {
        const auto [x, y] = pairs[p];
        PairContext ctx;
        ctx.x = x;
        ctx.y = y;
        if (!varies) {
            ctx.shared = std::make_unique<ewfs::EwfsCircuit>(build_for_trial(cfg, 0, x, y));
        }
        const ewfs::EwfsCircuit probe = varies ? build_for_trial(cfg, 0, x, y) : *ctx.shared;
        {
            const auto prep = validate::count_gates(probe.circuit.gates().subspan(0, probe.prep_gate_count));
            const auto whole = validate::count_gates(probe.circuit);
            if (!prep_counts) prep_counts = prep;
            if (!whole_counts || whole.doubles > whole_counts->doubles) whole_counts = whole;
        }
        if (cfg.mode == Mode::kSampled) {
            if (ctx.shared && !cfg.noise.has_gate_noise()) {
                ctx.ideal_sampler = std::make_unique<OutcomeSampler>(marginal_distribution(
                    qsim::simulate(ctx.shared->circuit), measured_list(*ctx.shared)));
            }
        } else if (ctx.shared) {
            ctx.exact = exact_estimate(cfg, *ctx.shared);
        }

        parallel_for(trials, cfg.threads, [&](size_t t) {
            const int trial = static_cast<int>(t);
            if (ctx.exact) {
                est[p][t] = *ctx.exact;
                return;
            }
            std::optional<ewfs::EwfsCircuit> own;
            if (!ctx.shared) own = build_for_trial(cfg, trial, x, y);
            const ewfs::EwfsCircuit& c = ctx.shared ? *ctx.shared : *own;
            if (cfg.mode != Mode::kSampled) {
                est[p][t] = exact_estimate(cfg, c);
                return;
            }
            qsim::RngStream rng(cfg.master_seed,
                                qsim::derive_seed(kUnitStreamSalt, {t, static_cast<uint64_t>(x),
                                                                    static_cast<uint64_t>(y)}));
            est[p][t] = sampled_estimate(cfg, c, ctx.ideal_sampler.get(), shots, rng);
        });

        PairStatistics ps;
        ps.x = x;
        ps.y = y;
        ps.applications = validate::count_gate_applications(probe.circuit.gates());
        std::vector<double> ab(trials);
        for (size_t t = 0; t < trials; ++t) ab[t] = est[p][t].ab;
        const auto s = lf::summarize(ab);
        ps.ab_mean = s.mean;
        ps.ab_std = s.stddev;
        for (int i = 0; i < 3; ++i) {
            if (a_source[i] == static_cast<int>(p)) {
                double m = 0.0;
                for (size_t t = 0; t < trials; ++t) m += est[p][t].a;
                ps.a_mean = m / static_cast<double>(trials);
            }
            if (b_source[i] == static_cast<int>(p)) {
                double m = 0.0;
                for (size_t t = 0; t < trials; ++t) m += est[p][t].b;
                ps.b_mean = m / static_cast<double>(trials);
            }
        }
        rec.pairs.push_back(ps);
    }

    std::vector<lf::ExpectationTable> tables(trials);
    for (size_t t = 0; t < trials; ++t) {
        auto& tab = tables[t];
        for (size_t p = 0; p < pairs.size(); ++p) {
            tab.set_ab(pairs[p].first, pairs[p].second, est[p][t].ab);
        }
        for (int i = 0; i < 3; ++i) {
            if (a_source[i] >= 0) tab.set_a(i + 1, est[static_cast<size_t>(a_source[i])][t].a);
            if (b_source[i] >= 0) tab.set_b(i + 1, est[static_cast<size_t>(b_source[i])][t].b);
        }
    }
    rec.lhs = lf::evaluate_trials(spec, tables);
    rec.violated = rec.lhs.mean - cfg.sigma_k * rec.lhs.stddev > 0.0;
    rec.branch = branch::branch_factor(cfg.friend_charlie);

    if (spec.is_chsh_form()) {
        validate::CertifyInputs in;
        in.x_tilde_mean = rec.lhs.mean + 2.0;
        in.x_tilde_std = rec.lhs.stddev;
        in.counts = cfg.validation_scope == ValidationScope::kFriendPrep ? *prep_counts : *whole_counts;
        in.p1 = cfg.noise.p1;
        in.p2 = cfg.noise.p2;
        in.sigma_multiplier = cfg.sigma_k;
        rec.validation = validate::certify(in);
        rec.validation_counts = in.counts;
        rec.certified = rec.validation->certified;
    }
    if (cfg.record_timing) {
        rec.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return rec;
}

std::vector<SweepCell> sweep_cells(const SweepGrid& grid) {
    std::vector<SweepCell> cells;
    const size_t n_strategies = std::max<size_t>(1, grid.strategies.size());
    for (size_t ki = 0; ki < grid.kinds.size(); ++ki) {
        for (size_t si = 0; si < grid.sizes.size(); ++si) {
            for (size_t ni = 0; ni < grid.noise_levels.size(); ++ni) {
                for (size_t di = 0; di < n_strategies; ++di) {
                    SweepCell cell;
                    cell.kind_index = ki;
                    cell.size_index = si;
                    cell.noise_index = ni;
                    cell.strategy_index = di;
                    EwfsConfig c = grid.base;
                    const int n = grid.sizes[si];
                    const auto& base_kind = grid.base.friend_charlie;
                    switch (grid.kinds[ki]) {
                        case ewfs::FriendFamily::kGhz:
                            c.friend_charlie = ewfs::FriendKind::ghz(n);
                            break;
                        case ewfs::FriendFamily::kRandomUnitary:
                            c.friend_charlie = ewfs::FriendKind::random_unitary(
                                n, base_kind.family == ewfs::FriendFamily::kRandomUnitary ? base_kind.seed : 0);
                            break;
                        case ewfs::FriendFamily::kDicke: {
                            const bool keep = base_kind.family == ewfs::FriendFamily::kDicke && base_kind.k < n;
                            c.friend_charlie = ewfs::FriendKind::dicke(n, keep ? base_kind.k : std::max(1, n / 2));
                            break;
                        }
                    }
                    const double p = grid.noise_levels[ni];
                    c.noise.p2 = p;
                    c.noise.p1 = p * grid.p1_ratio;
                    if (!grid.strategies.empty()) c.decoder_peek = grid.strategies[di];
                    c.master_seed = qsim::derive_seed(grid.base.master_seed, {ki, si, ni});
                    cell.config = std::move(c);
                    cells.push_back(std::move(cell));
                }
            }
        }
    }
    return cells;
}

std::vector<ResultRecord> run_sweep(const SweepGrid& grid,
                                    const std::function<void(size_t, size_t)>& progress) {
    const auto cells = sweep_cells(grid);
    std::vector<ResultRecord> out;
    out.reserve(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        try {
            out.push_back(run_experiment(cells[i].config));
        } catch (const std::exception& e) {
            ResultRecord r;
            r.config = cells[i].config;
            r.error = e.what();
            if (dynamic_cast<const ConfigError*>(&e)) {
                r.error_category = "config";
            } else if (dynamic_cast<const InfeasibleError*>(&e)) {
                r.error_category = "infeasible";
            } else {
                r.error_category = "runtime";
            }
            out.push_back(std::move(r));
        }
        if (progress) progress(i + 1, cells.size());
    }
    return out;
}

}  // namespace ewfslab::cli
