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

#ifndef RCT_HARNESS_HPP
#define RCT_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rct/config.hpp"
#include "rct/detection.hpp"

namespace rct {

struct TrialRecord {
    long long trial = 0;
    bool correct = false;
    InferredState state = InferredState::NoAttack;
    bool fallback = false;
    double rs_raw = 0.0;  // r_L - r_E, or 0 after a wrong decision
    double rs = 0.0;      // rs_raw, clamped at 0 when clamping is on
    double r_L = 0.0;
    double r_E = 0.0;
};

struct SweepPoint {
    double value = 0.0;
    long long trials = 0;
    long long errors = 0;
    double edr = 0.0;
    double edr_ci_lo = 0.0;
    double edr_ci_hi = 0.0;
    double mean_rs = 0.0;
    double mean_rl = 0.0;
    double mean_re = 0.0;
    std::vector<TrialRecord> records;  // kept only on request
};

struct Summary {
    std::string sweep_variable;
    std::uint64_t seed = 0;
    std::vector<SweepPoint> points;
};

struct RunOptions {
    bool keep_records = false;
};

// Pilot-identification error rate. Trial t draws from Rng::substream(seed, t),
// so results do not depend on the worker count.
Summary run_edr_trials(const ExperimentConfig& cfg, const RunOptions& opts = {});

// Full detect, estimate, beamform pipeline; reports secrecy and link rates.
Summary run_secrecy_trials(const ExperimentConfig& cfg, const RunOptions& opts = {});

// Single sweep point helpers used by the runners.
SweepPoint run_edr_point(const ExperimentConfig& cfg, double value, const RunOptions& opts = {});
SweepPoint run_secrecy_point(const ExperimentConfig& cfg, double value, const RunOptions& opts = {});

enum class OutputFormat { Csv };

void write_csv(const Summary& summary, std::ostream& out);
void write_trial_csv(const Summary& summary, std::ostream& out);
void emit_results(const Summary& summary, const std::string& path, OutputFormat format = OutputFormat::Csv);
void emit_trial_dump(const Summary& summary, const std::string& path);

const char* to_string(InferredState s);

} // namespace rct

#endif
