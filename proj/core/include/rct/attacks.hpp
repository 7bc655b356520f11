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

#ifndef RCT_ATTACKS_HPP
#define RCT_ATTACKS_HPP

#include <vector>

#include "rct/training.hpp"

namespace rct {

struct AttackConfig {
    AttackKind kind = AttackKind::None;
    int K = 1;                      // PSA: number of spoofed pilots
    std::vector<int> fixed_subset;  // PSA: empty means a uniform random K-subset
    bool zero_phases = false;       // debug switch, PSA phases forced to 0
};

struct AttackRealization {
    AttackKind kind = AttackKind::None;
    CVec a;                    // length tau
    std::vector<int> pilots;   // PSA: ascending spoofed indices
    std::vector<double> phases;
    CVec jam;                  // PJA: a^H x_n / tau

    bool hits(int lu_index) const;
};

AttackRealization no_attack(int tau);

// a = sum over the spoofed set of exp(j w_n) sqrt(1/K) x_n, w_n uniform on [0, 2 pi).
AttackRealization psa_attack(const PilotSet& pilots, const AttackConfig& cfg, Rng& rng);

// a ~ CN(0, I_tau).
AttackRealization pja_attack(const PilotSet& pilots, Rng& rng);

// Uniform K-subset of {0..N-1}, ascending.
std::vector<int> random_subset(int N, int K, Rng& rng);

// Uniform K-subset constrained to contain (hit) or avoid (miss) the given index.
std::vector<int> conditioned_subset(int N, int K, int index, bool hit, Rng& rng);

// Synthesizes the uplink frame and matched-filters it; fills the truth record.
ObservationSet observe_training(const PilotSet& pilots, int lu_index, const CVec& h_L, const CVec& h_E,
                                const AttackRealization& attack, const TrainingParams& params, Rng& rng);

} // namespace rct

#endif
