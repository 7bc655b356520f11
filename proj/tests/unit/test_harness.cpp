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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rct/analysis.hpp"
#include "rct/channel.hpp"
#include "rct/config.hpp"
#include "rct/error.hpp"
#include "rct/harness.hpp"

using namespace rct;

namespace {

ExperimentConfig small_config()
{
    ExperimentConfig c;
    c.antennas = 8;
    c.tau = 5;
    c.pilots = 5;
    c.K = 2;
    c.trials = 300;
    c.seed = 7;
    c.eve.paths = {PathSpec{30.0, 20.0}};
    return c;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    return out;
}

std::string csv_of(const Summary& s)
{
    std::ostringstream os;
    write_csv(s, os);
    return os.str();
}

std::string trial_csv_of(const Summary& s)
{
    std::ostringstream os;
    write_trial_csv(s, os);
    return os.str();
}

} // namespace

TEST(Harness, EdrIndependentOfWorkerCount)
{
    ExperimentConfig c = small_config();
    c.sweep_variable = "p_E_dbm";
    c.sweep_values = {5.0, 15.0};
    RunOptions keep{true};
    c.workers = 1;
    const Summary a = run_edr_trials(c, keep);
    c.workers = 4;
    const Summary b = run_edr_trials(c, keep);
    EXPECT_EQ(csv_of(a), csv_of(b));
    EXPECT_EQ(trial_csv_of(a), trial_csv_of(b));
}

TEST(Harness, SecrecyIndependentOfWorkerCount)
{
    ExperimentConfig c = small_config();
    c.trials = 100;
    RunOptions keep{true};
    c.workers = 1;
    const Summary a = run_secrecy_trials(c, keep);
    c.workers = 3;
    const Summary b = run_secrecy_trials(c, keep);
    EXPECT_EQ(trial_csv_of(a), trial_csv_of(b));
}

TEST(Harness, RerunsAreByteIdentical)
{
    const ExperimentConfig c = small_config();
    EXPECT_EQ(csv_of(run_edr_trials(c)), csv_of(run_edr_trials(c)));
    ExperimentConfig d = c;
    d.seed = 8;
    EXPECT_NE(trial_csv_of(run_edr_trials(c, {true})), trial_csv_of(run_edr_trials(d, {true})));
}

TEST(Harness, CsvRoundTrip)
{
    ExperimentConfig c = small_config();
    c.sweep_variable = "eta";
    c.sweep_values = {0.01, 0.001};  // written in ascending order
    const Summary s = run_secrecy_trials(c);
    std::istringstream in(csv_of(s));
    std::string line;
    ASSERT_TRUE(std::getline(in, line));
    EXPECT_EQ(line, "sweep_value,edr,edr_ci_lo,edr_ci_hi,mean_rs,mean_rl,mean_re,trials,seed");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line))
        rows.push_back(split(line));
    ASSERT_EQ(rows.size(), 2u);
    const SweepPoint* by_value[2] = {&s.points[1], &s.points[0]};
    for (int i = 0; i < 2; ++i) {
        ASSERT_EQ(rows[i].size(), 9u);
        const SweepPoint& p = *by_value[i];
        const double got[] = {std::stod(rows[i][0]), std::stod(rows[i][1]), std::stod(rows[i][2]),
                              std::stod(rows[i][3]), std::stod(rows[i][4]), std::stod(rows[i][5]),
                              std::stod(rows[i][6])};
        const double want[] = {p.value, p.edr, p.edr_ci_lo, p.edr_ci_hi, p.mean_rs, p.mean_rl, p.mean_re};
        for (int k = 0; k < 7; ++k)
            EXPECT_NEAR(got[k], want[k], 1e-12 * std::max(1.0, std::abs(want[k])));
        EXPECT_EQ(std::stoll(rows[i][7]), p.trials);
        EXPECT_EQ(std::stoull(rows[i][8]), c.seed);
    }
}

TEST(Harness, EmptySummaryWritesHeaderOnly)
{
    Summary s;
    EXPECT_EQ(csv_of(s), "sweep_value,edr,edr_ci_lo,edr_ci_hi,mean_rs,mean_rl,mean_re,trials,seed\n");
    EXPECT_EQ(trial_csv_of(s), "sweep_value,trial,correct,state,fallback,rs_raw,rs,r_L,r_E\n");
}

TEST(Harness, EmitWritesFileAndReportsIoErrors)
{
    const Summary s = run_edr_trials(small_config());
    const std::string path = ::testing::TempDir() + "rct_harness_emit.csv";
    emit_results(s, path);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), csv_of(s));
    std::remove(path.c_str());
    try {
        emit_results(s, "/nonexistent/dir/out.csv");
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Io);
    }
}

TEST(Harness, NoAttackIsAlwaysIdentified)
{
    // the genie prescreen keeps exactly the LU pilot
    ExperimentConfig c = small_config();
    c.attack = AttackKind::None;
    const SweepPoint p = run_edr_point(c, 0.0, {true});
    EXPECT_EQ(p.errors, 0);
    for (const auto& r : p.records)
        EXPECT_EQ(r.state, InferredState::NoAttack);
}

TEST(Harness, NoiseFreeDistanceIdentificationIsExact)
{
    // K = 3 of 5 pilots: hits leave 3 survivors, misses 4, so the
    // distance rule decides every trial
    ExperimentConfig c = small_config();
    c.K = 3;
    c.sigma_t2 = 1e-14;
    c.trials = 500;
    const SweepPoint p = run_edr_point(c, 0.0, {true});
    EXPECT_EQ(p.errors, 0);
    int hits = 0;
    for (const auto& r : p.records)
        hits += r.state == InferredState::PsaHit ? 1 : 0;
    EXPECT_GT(hits, 0);
    EXPECT_LT(hits, 500);
}

TEST(Harness, SingleSpoofMissMatchesAnalyticRate)
{
    ExperimentConfig c;
    c.antennas = 4;
    c.tau = 5;
    c.pilots = 5;
    c.K = 1;
    c.condition = AttackCondition::Miss;
    c.detector = EdrDetector::Llr;
    c.sigma_t2 = 1.0;
    c.p_L_dbm = 20.0;
    c.p_E_dbm = 20.0;
    c.eve.paths = {PathSpec{20.0, 10.0}};
    c.trials = 40000;
    c.workers = 4;
    const SweepPoint p = run_edr_point(c, 0.0);

    PowerAzimuthSpectrum lu, eve;
    lu.paths = {AngularPath{0.0, deg_to_rad(30.0)}};
    eve.paths = {AngularPath{deg_to_rad(20.0), deg_to_rad(10.0)}};
    const double want =
        edr12_analytic(covariance_from_pas(lu, 4).R, covariance_from_pas(eve, 4).R, c.training_params()).value;
    const double se = std::sqrt(want * (1 - want) / static_cast<double>(c.trials));
    EXPECT_GT(want, 0.01);
    EXPECT_NEAR(p.edr, want, 4 * se + 1e-3);
}

TEST(Harness, ConventionalDesignUsesSingleObservation)
{
    ExperimentConfig c = small_config();
    c.design = SchemeDesign::Conventional;
    c.attack = AttackKind::None;
    const SweepPoint p = run_secrecy_point(c, 0.0, {true});
    EXPECT_EQ(p.errors, 0);
    EXPECT_GT(p.mean_rl, 0.0);
    EXPECT_TRUE(std::isfinite(p.mean_re));
    for (const auto& r : p.records) {
        EXPECT_GE(r.rs, 0.0);
        EXPECT_NEAR(r.rs_raw, r.r_L - r.r_E, 1e-12);
    }
}

TEST(Harness, ClampingOnlyAffectsNegativeRates)
{
    ExperimentConfig c = small_config();
    c.p_E_dbm = 30.0;
    c.trials = 200;
    const SweepPoint clamped = run_secrecy_point(c, 0.0, {true});
    c.clamp_rates = false;
    const SweepPoint raw = run_secrecy_point(c, 0.0, {true});
    ASSERT_EQ(clamped.records.size(), raw.records.size());
    for (std::size_t i = 0; i < raw.records.size(); ++i) {
        EXPECT_EQ(clamped.records[i].rs_raw, raw.records[i].rs_raw);
        EXPECT_EQ(clamped.records[i].rs, std::max(0.0, raw.records[i].rs_raw));
        EXPECT_EQ(raw.records[i].rs, raw.records[i].rs_raw);
    }
    EXPECT_GE(clamped.mean_rs, raw.mean_rs);
}

TEST(Harness, EdrConfidenceIntervalBracketsEstimate)
{
    const SweepPoint p = run_edr_point(small_config(), 0.0);
    EXPECT_LE(p.edr_ci_lo, p.edr);
    EXPECT_GE(p.edr_ci_hi, p.edr);
    EXPECT_GE(p.edr_ci_lo, 0.0);
    EXPECT_LE(p.edr_ci_hi, 1.0);
    EXPECT_EQ(p.trials, 300);
}
