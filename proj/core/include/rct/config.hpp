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

#ifndef RCT_CONFIG_HPP
#define RCT_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rct/training.hpp"

namespace rct {

struct PathSpec {
    double center_deg = 0.0;
    double spread_deg = 0.0;
};

struct ChannelSpec {
    bool identity = false;
    std::vector<PathSpec> paths{PathSpec{0.0, 30.0}};
};

enum class AttackCondition { Random, Hit, Miss };
enum class EdrDetector { Llr, Power, Gllr, Distance, Pja, Resolve };
enum class PrescreenMode { Genie, Threshold };
enum class SchemeDesign { Proposed, Conventional };
enum class BeamChoice { Optimal, LowComplexity };

struct ExperimentConfig {
    // array and training
    int antennas = 16;
    int tau = 5;
    int pilots = 5;
    double p_L_dbm = 10.0;
    double sigma_t2 = 1e-3;

    // attack
    AttackKind attack = AttackKind::PSA;
    int K = 1;
    std::vector<int> fixed_subset;        // empty: uniform random subset
    AttackCondition condition = AttackCondition::Random;
    double p_E_dbm = 10.0;
    std::optional<double> beta;           // PSA: fixes p_E = beta^2 K p_L when set
    bool zero_phases = false;

    // channels
    ChannelSpec lu;
    ChannelSpec eve;

    // downlink
    double p_B_dbm = 20.0;
    double sigma_L2 = 1e-2;
    double sigma_E2 = 1e-2;

    // detection
    double eta = 1e-3;
    EdrDetector detector = EdrDetector::Resolve;
    PrescreenMode prescreen = PrescreenMode::Genie;
    std::optional<double> prescreen_threshold;  // default sigma_z2 (M + 4 sqrt(M))

    // experiment
    long long trials = 2000;
    std::uint64_t seed = 1;
    int workers = 1;
    bool clamp_rates = true;
    SchemeDesign design = SchemeDesign::Proposed;
    BeamChoice beamformer = BeamChoice::Optimal;
    std::string sweep_variable;           // empty: single run
    std::vector<double> sweep_values;

    void validate() const;

    // Linear training parameters implied by the dBm settings (and beta, if set).
    TrainingParams training_params() const;
};

// Names accepted as experiment.sweep.variable.
const std::vector<std::string>& sweep_variables();

// Copy of cfg with the sweep variable set to value.
ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, const std::string& variable, double value);

// YAML document with sections array, training, attack, channels, downlink,
// detection and experiment. Unknown keys raise ErrorCode::Config.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

} // namespace rct

#endif
