// SPDX-License-Identifier: Apache-2.0
//
// rctsec: randomized uplink pilot training against pilot spoofing and jamming
// Copyright (C) 2026 The rctsec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rct/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include "rct/attacks.hpp"
#include "rct/beamforming.hpp"
#include "rct/channel.hpp"
#include "rct/error.hpp"
#include "rct/estimation.hpp"

namespace rct {

namespace {

CMat build_covariance(const ChannelSpec& spec, int M)
{
    if (spec.identity)
        return identity_covariance(M).R;
    PowerAzimuthSpectrum pas;
    for (const auto& p : spec.paths)
        pas.paths.push_back(AngularPath{deg_to_rad(p.center_deg), deg_to_rad(p.spread_deg)});
    return covariance_from_pas(pas, M).R;
}

// Everything that is fixed across the trials of one sweep point.
struct Context {
    ExperimentConfig cfg;
    TrainingParams params;
    PilotSet pilots;
    CMat R_L;
    CMat R_E;
    ComplexGaussian gen_L;
    ComplexGaussian gen_E;
    DownlinkParams dl;
    double eps_psa = 0.0;
    double eps_pja = 0.0;
    double prescreen_threshold = 0.0;
    std::optional<LlrK1Detector> llr;
    std::optional<GllrDetector> gllr;
    std::optional<PsaResolver> resolver;

    Context(const ExperimentConfig& c, int pilot_count)
        : cfg(c), params(c.training_params()), pilots(generate_pilots(c.tau, pilot_count)),
          R_L(build_covariance(c.lu, c.antennas)), R_E(build_covariance(c.eve, c.antennas)), gen_L(R_L),
          gen_E(R_E)
    {
        params.validate();
        dl = DownlinkParams{dbm_to_watts(c.p_B_dbm), c.sigma_L2, c.sigma_E2};
        const double s = params.sigma_z2();
        eps_psa = psa_threshold(c.antennas, s, c.eta).epsilon;
        eps_pja = pja_threshold(c.antennas, s, c.eta).epsilon;
        prescreen_threshold = c.prescreen_threshold.value_or(default_prescreen_threshold(c.antennas, s));
    }

    void prepare_psa_detectors(bool two_obs, bool want_resolver)
    {
        if (two_obs) {
            llr.emplace(R_L, R_E, params);
            gllr.emplace(R_L, R_E, params, 2);
        }
        if (want_resolver)
            resolver.emplace(R_L, R_E, params, eps_psa, pilots.count);
    }
};

AttackRealization draw_attack(const Context& ctx, int lu, Rng& rng)
{
    const auto& cfg = ctx.cfg;
    switch (cfg.attack) {
    case AttackKind::None:
        return no_attack(ctx.pilots.tau);
    case AttackKind::PJA:
        return pja_attack(ctx.pilots, rng);
    case AttackKind::PSA:
        break;
    }
    AttackConfig ac;
    ac.kind = AttackKind::PSA;
    ac.zero_phases = cfg.zero_phases;
    if (ctx.pilots.count == 1) {
        ac.K = 1;
        ac.fixed_subset = {0};
    } else {
        ac.K = cfg.K;
        ac.fixed_subset = cfg.fixed_subset;
        if (ac.fixed_subset.empty() && cfg.condition != AttackCondition::Random)
            ac.fixed_subset =
                conditioned_subset(ctx.pilots.count, cfg.K, lu, cfg.condition == AttackCondition::Hit, rng);
    }
    return psa_attack(ctx.pilots, ac, rng);
}

struct Draw {
    int lu = 0;
    ObservationSet obs;
    std::vector<int> survivors;
};

Draw draw_trial(const Context& ctx, Rng& rng)
{
    Draw d;
    d.lu = static_cast<int>(rng.index(static_cast<std::size_t>(ctx.pilots.count)));
    const CVec h_L = ctx.gen_L(rng);
    const CVec h_E = ctx.gen_E(rng);
    const AttackRealization attack = draw_attack(ctx, d.lu, rng);
    d.obs = observe_training(ctx.pilots, d.lu, h_L, h_E, attack, ctx.params, rng);
    d.survivors = ctx.cfg.prescreen == PrescreenMode::Genie ? prescreen_genie(d.obs).survivors
                                                            : prescreen(d.obs, ctx.prescreen_threshold).survivors;
    return d;
}

std::vector<CVec> gather(const ObservationSet& obs, const std::vector<int>& idx)
{
    std::vector<CVec> ys;
    ys.reserve(idx.size());
    for (int n : idx)
        ys.push_back(obs.y[n]);
    return ys;
}

// Maps a position-based outcome back to pilot indices.
std::optional<int> to_pilot(const DetectionOutcome& out, const std::vector<int>& survivors)
{
    if (!out.lu_index)
        return std::nullopt;
    return survivors[*out.lu_index];
}

TrialRecord edr_trial(const Context& ctx, long long t)
{
    Rng rng = Rng::substream(ctx.cfg.seed, static_cast<std::uint64_t>(t));
    const Draw d = draw_trial(ctx, rng);
    const std::vector<CVec> ys = gather(d.obs, d.survivors);

    TrialRecord rec;
    rec.trial = t;
    DetectionOutcome out;
    switch (ctx.cfg.detector) {
    case EdrDetector::Llr:
    case EdrDetector::Power:
    case EdrDetector::Gllr: {
        if (ys.size() != 2)
            break;
        Hypothesis h = Hypothesis::H0;
        if (ctx.cfg.detector == EdrDetector::Power)
            h = power_test(ys[0], ys[1]);
        else if (ctx.cfg.detector == EdrDetector::Llr)
            h = ctx.llr ? ctx.llr->decide(ys[0], ys[1]) : Hypothesis::H0;
        else
            h = ctx.gllr ? ctx.gllr->decide(ys[0], ys[1]) : Hypothesis::H0;
        out.lu_index = h == Hypothesis::H0 ? 0 : 1;
        break;
    }
    case EdrDetector::Distance:
        if (ys.size() >= 3)
            out = identify_lu_psa(ys, ctx.eps_psa);
        break;
    case EdrDetector::Pja:
        if (ys.size() >= 3)
            out = identify_lu_pja(ys, ctx.eps_pja);
        break;
    case EdrDetector::Resolve:
        if (ctx.resolver)
            out = ctx.resolver->resolve(ys);
        else if (!ys.empty())
            out.lu_index = 0;
        break;
    }
    const auto chosen = to_pilot(out, d.survivors);
    rec.correct = chosen && *chosen == d.lu;
    rec.state = out.inferred_state;
    rec.fallback = out.flags.fallback_used;
    return rec;
}

struct EstimatePair {
    ChannelEstimate L;
    ChannelEstimate E;
};

EstimatePair psa_estimates(const Context& ctx, const ObservationSet& obs, const std::vector<int>& survivors, int lu,
                           const DetectionOutcome& out)
{
    const CVec& y = obs.y[lu];
    std::vector<CVec> eve;
    for (int n : survivors)
        if (n != lu)
            eve.push_back(obs.y[n]);
    const int M = ctx.cfg.antennas;
    EstimatePair e;
    if (out.inferred_state == InferredState::NoAttack || out.inferred_K < 1) {
        e.L = mmse_hl_psa(y, false, 1, ctx.R_L, ctx.R_E, ctx.params);
        e.E = ChannelEstimate{CVec::Zero(M), ctx.R_E};
        return e;
    }
    const int K = out.inferred_K;
    const bool hit = out.inferred_state == InferredState::PsaHit;
    e.L = mmse_hl_psa(y, hit, K, ctx.R_L, ctx.R_E, ctx.params);
    if (eve.empty())
        e.E = mmse_he_psa_single(y, ctx.R_L, ctx.R_E, ctx.params);
    else
        e.E = mmse_he_psa_multi(combine_eve_obs(eve), static_cast<int>(eve.size()), K, ctx.R_E, ctx.params);
    return e;
}

void finish_rates(TrialRecord& rec, const Beamformer& beam, const ObservationSet& obs, const Context& ctx)
{
    const LinkRates r = link_rates(beam.v, obs.truth.h_L, obs.truth.h_E, ctx.dl);
    rec.r_L = r.r_L;
    rec.r_E = r.r_E;
    rec.rs_raw = rec.correct ? r.secrecy() : 0.0;
    rec.rs = ctx.cfg.clamp_rates ? std::max(0.0, rec.rs_raw) : rec.rs_raw;
}

TrialRecord secrecy_trial(const Context& ctx, long long t)
{
    Rng rng = Rng::substream(ctx.cfg.seed, static_cast<std::uint64_t>(t));
    const Draw d = draw_trial(ctx, rng);
    TrialRecord rec;
    rec.trial = t;

    if (ctx.pilots.count == 1) {
        // conventional training: the single observation is taken at face value
        const ChannelEstimate est = mmse_no_attack(d.obs.y[0], ctx.R_L, ctx.params);
        rec.correct = true;
        rec.state = InferredState::NoAttack;
        finish_rates(rec, matched_filter_beam(est.hhat), d.obs, ctx);
        return rec;
    }

    const std::vector<CVec> ys = gather(d.obs, d.survivors);
    if (ctx.cfg.attack == AttackKind::PJA) {
        if (ys.size() < 3)
            return rec;
        const DetectionOutcome out = identify_lu_pja(ys, ctx.eps_pja);
        const int lu = *to_pilot(out, d.survivors);
        rec.correct = lu == d.lu;
        rec.state = out.inferred_state;
        rec.fallback = out.flags.fallback_used;
        const ChannelEstimate est_L = lmmse_hl_pja(d.obs.y[lu], ctx.R_L, ctx.R_E, ctx.params);
        CMat Y_E(ctx.cfg.antennas, static_cast<Eigen::Index>(ys.size()) - 1);
        Eigen::Index col = 0;
        for (int n : d.survivors)
            if (n != lu)
                Y_E.col(col++) = d.obs.y[n];
        const ChannelEstimate dir_E = eve_direction_pja(Y_E);
        finish_rates(rec, zf_pja(est_L, dir_E, ctx.dl), d.obs, ctx);
        return rec;
    }

    DetectionOutcome out;
    if (ctx.resolver)
        out = ctx.resolver->resolve(ys);
    else if (!ys.empty())
        out.lu_index = 0;
    const auto chosen = to_pilot(out, d.survivors);
    if (!chosen)
        return rec;
    rec.correct = *chosen == d.lu;
    rec.state = out.inferred_state;
    rec.fallback = out.flags.fallback_used;
    const EstimatePair est = psa_estimates(ctx, d.obs, d.survivors, *chosen, out);
    const Beamformer beam = ctx.cfg.beamformer == BeamChoice::Optimal ? sb_optimal(est.L, est.E, ctx.dl)
                                                                      : sb_lowcomplexity(est.L, est.E, ctx.dl);
    finish_rates(rec, beam, d.obs, ctx);
    return rec;
}

template <typename Fn>
std::vector<TrialRecord> run_parallel(long long trials, int workers, Fn&& fn)
{
    std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
    std::atomic<long long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto work = [&] {
        for (;;) {
            const long long t = next.fetch_add(1);
            if (t >= trials)
                return;
            try {
                records[static_cast<std::size_t>(t)] = fn(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(trials);
                return;
            }
        }
    };
    const int n = static_cast<int>(std::min<long long>(std::max(1, workers), trials));
    if (n <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n; ++i)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    if (error)
        std::rethrow_exception(error);
    return records;
}

SweepPoint summarize(double value, std::vector<TrialRecord> records, bool keep)
{
    SweepPoint p;
    p.value = value;
    p.trials = static_cast<long long>(records.size());
    double rs = 0.0;
    double rl = 0.0;
    double re = 0.0;
    for (const auto& r : records) {  // trial order, so the sums are schedule independent
        p.errors += r.correct ? 0 : 1;
        rs += r.rs;
        rl += r.r_L;
        re += r.r_E;
    }
    const double n = static_cast<double>(p.trials);
    p.edr = static_cast<double>(p.errors) / n;
    const double half = 1.96 * std::sqrt(p.edr * (1.0 - p.edr) / n);
    p.edr_ci_lo = std::max(0.0, p.edr - half);
    p.edr_ci_hi = std::min(1.0, p.edr + half);
    p.mean_rs = rs / n;
    p.mean_rl = rl / n;
    p.mean_re = re / n;
    if (keep)
        p.records = std::move(records);
    return p;
}

ExperimentConfig point_config(const ExperimentConfig& cfg, double value)
{
    if (cfg.sweep_variable.empty())
        return cfg;
    ExperimentConfig c = with_sweep_value(cfg, cfg.sweep_variable, value);
    c.validate();
    return c;
}

std::vector<double> sweep_grid(const ExperimentConfig& cfg)
{
    if (cfg.sweep_variable.empty())
        return {0.0};
    return cfg.sweep_values;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

SweepPoint run_edr_point(const ExperimentConfig& cfg, double value, const RunOptions& opts)
{
    const ExperimentConfig c = point_config(cfg, value);
    c.validate();
    Context ctx(c, c.pilots);
    if (c.attack == AttackKind::PSA || c.attack == AttackKind::None)
        ctx.prepare_psa_detectors(c.detector == EdrDetector::Llr || c.detector == EdrDetector::Gllr,
                                  c.detector == EdrDetector::Resolve);
    auto records = run_parallel(c.trials, c.workers, [&](long long t) { return edr_trial(ctx, t); });
    return summarize(value, std::move(records), opts.keep_records);
}

SweepPoint run_secrecy_point(const ExperimentConfig& cfg, double value, const RunOptions& opts)
{
    const ExperimentConfig c = point_config(cfg, value);
    c.validate();
    const int pilot_count = c.design == SchemeDesign::Conventional ? 1 : c.pilots;
    Context ctx(c, pilot_count);
    if (pilot_count > 1 && c.attack != AttackKind::PJA)
        ctx.prepare_psa_detectors(false, true);
    auto records = run_parallel(c.trials, c.workers, [&](long long t) { return secrecy_trial(ctx, t); });
    return summarize(value, std::move(records), opts.keep_records);
}

Summary run_edr_trials(const ExperimentConfig& cfg, const RunOptions& opts)
{
    cfg.validate();
    Summary s{cfg.sweep_variable, cfg.seed, {}};
    for (double v : sweep_grid(cfg))
        s.points.push_back(run_edr_point(cfg, v, opts));
    return s;
}

Summary run_secrecy_trials(const ExperimentConfig& cfg, const RunOptions& opts)
{
    cfg.validate();
    Summary s{cfg.sweep_variable, cfg.seed, {}};
    for (double v : sweep_grid(cfg))
        s.points.push_back(run_secrecy_point(cfg, v, opts));
    return s;
}

const char* to_string(InferredState s)
{
    switch (s) {
    case InferredState::NoAttack:
        return "no_attack";
    case InferredState::PsaHit:
        return "psa_hit";
    case InferredState::PsaMiss:
        return "psa_miss";
    case InferredState::Pja:
        return "pja";
    }
    return "unknown";
}

void write_csv(const Summary& summary, std::ostream& out)
{
    out << "sweep_value,edr,edr_ci_lo,edr_ci_hi,mean_rs,mean_rl,mean_re,trials,seed\n";
    std::vector<const SweepPoint*> rows;
    for (const auto& p : summary.points)
        rows.push_back(&p);
    std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->value < b->value; });
    for (const auto* p : rows)
        out << fmt(p->value) << ',' << fmt(p->edr) << ',' << fmt(p->edr_ci_lo) << ',' << fmt(p->edr_ci_hi) << ','
            << fmt(p->mean_rs) << ',' << fmt(p->mean_rl) << ',' << fmt(p->mean_re) << ',' << p->trials << ','
            << summary.seed << '\n';
}

void write_trial_csv(const Summary& summary, std::ostream& out)
{
    out << "sweep_value,trial,correct,state,fallback,rs_raw,rs,r_L,r_E\n";
    for (const auto& p : summary.points)
        for (const auto& r : p.records)
            out << fmt(p.value) << ',' << r.trial << ',' << (r.correct ? 1 : 0) << ',' << to_string(r.state) << ','
                << (r.fallback ? 1 : 0) << ',' << fmt(r.rs_raw) << ',' << fmt(r.rs) << ',' << fmt(r.r_L) << ','
                << fmt(r.r_E) << '\n';
}

void emit_results(const Summary& summary, const std::string& path, OutputFormat format)
{
    (void)format;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    write_csv(summary, out);
    if (!out)
        fail(ErrorCode::Io, "write to '" + path + "' failed");
}

void emit_trial_dump(const Summary& summary, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    write_trial_csv(summary, out);
    if (!out)
        fail(ErrorCode::Io, "write to '" + path + "' failed");
}

} // namespace rct
