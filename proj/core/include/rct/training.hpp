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

#ifndef RCT_TRAINING_HPP
#define RCT_TRAINING_HPP

#include <optional>
#include <vector>

#include "rct/numerics.hpp"

namespace rct {

double dbm_to_watts(double dbm);

// N orthogonal pilots of length tau, stored as the columns of X (tau x N).
struct PilotSet {
    int tau = 0;
    int count = 0;
    CMat X;

    CVec pilot(int n) const { return X.col(n); }
};

// First N columns of the tau-point DFT matrix, scaled so that X^H X = tau I.
PilotSet generate_pilots(int tau, int count);

// Linear-power training parameters. sigma_t2 is the per-element noise power
// of the received uplink frame.
struct TrainingParams {
    int tau = 1;
    double p_L = 1.0;
    double p_E = 0.0;
    double sigma_t2 = 1e-3;

    void validate() const;

    double phi() const;          // matched-filter normalisation 1 / (tau sqrt(p_L))
    double sigma_z2() const;     // observation noise sigma_t2 / (tau p_L)
    double beta_psa(int K) const; // sqrt(p_E / (K p_L))
    double beta_pja() const;     // sqrt(p_E / p_L)
};

enum class AttackKind { None, PSA, PJA };

// Ground truth carried alongside the observations. Only scoring code reads it.
struct ObservationTruth {
    int lu_index = -1;            // 0-based
    AttackKind attack = AttackKind::None;
    std::vector<int> eve_pilots;  // PSA: spoofed pilot indices, ascending
    std::vector<double> phases;   // PSA: phase applied to each spoofed pilot
    CVec jam;                     // PJA: per-pilot coefficients a^H x_n / tau
    bool hit = false;
    CVec h_L;
    CVec h_E;
};

struct ObservationSet {
    std::vector<CVec> y;
    ObservationTruth truth;

    int size() const { return static_cast<int>(y.size()); }
    int antennas() const { return y.empty() ? 0 : static_cast<int>(y.front().size()); }
};

// Y_U = sqrt(p_L) h_L x_L^H + sqrt(p_E) h_E a^H + V with V iid CN(0, sigma_t2).
CMat synthesize_uplink(const PilotSet& pilots, int lu_index, const CVec& h_L, const CVec& h_E,
                       const CVec& a, const TrainingParams& params, Rng& rng);

// y_n = phi Y_U x_n for every pilot. Truth is left at its defaults.
ObservationSet matched_filter(const CMat& Y, const PilotSet& pilots, const TrainingParams& params);

// sigma_z2 (M + 4 sqrt(M)): four standard deviations above the noise-only mean of ||y||^2.
double default_prescreen_threshold(int antennas, double sigma_z2);

struct PrescreenResult {
    std::vector<int> survivors;  // ascending
    bool empty() const { return survivors.empty(); }
};

// Keeps n iff ||y_n||^2 > threshold.
PrescreenResult prescreen(const ObservationSet& obs, double threshold);

// Keeps exactly the observations that carry h_L or h_E according to the truth.
PrescreenResult prescreen_genie(const ObservationSet& obs);

// Covariances of the matched-filter outputs under the PSA observation model.
CMat lu_observation_cov(const CMat& R_L, const TrainingParams& params);                     // R_L + s I
CMat eve_observation_cov(const CMat& R_E, const TrainingParams& params, int K);             // b^2 R_E + s I
CMat spoofed_lu_observation_cov(const CMat& R_L, const CMat& R_E, const TrainingParams& params,
                                int K);                                                      // R_L + b^2 R_E + s I
// Joint covariance of [LU observation; one Eve-only observation] after a hit,
// at zero relative phase: [[R_L + b^2 R_E + s I, b^2 R_E], [b^2 R_E, b^2 R_E + s I]].
CMat hit_pair_cov(const CMat& R_L, const CMat& R_E, const TrainingParams& params, int K);

} // namespace rct

#endif
