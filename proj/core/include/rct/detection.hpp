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

#ifndef RCT_DETECTION_HPP
#define RCT_DETECTION_HPP

#include <optional>
#include <span>
#include <vector>

#include "rct/numerics.hpp"
#include "rct/training.hpp"

namespace rct {

// H0: the first observation of the pair belongs to the LU.
enum class Hypothesis { H0, H1 };

enum class InferredState { NoAttack, PsaHit, PsaMiss, Pja };

struct DetectionFlags {
    bool fallback_used = false;
    bool tie = false;
    bool empty_effective_set = false;
};

struct DetectionOutcome {
    std::optional<int> lu_index;  // position within the inspected observations
    InferredState inferred_state = InferredState::NoAttack;
    int inferred_K = 0;           // number of spoofed pilots implied by the decision
    DetectionFlags flags;

    bool decided() const { return lu_index.has_value(); }
};

struct ThresholdSpec {
    double eta = 0.0;
    double epsilon = 0.0;
};

// ---- two-observation tests -------------------------------------------------

// LLR between "y1 is the LU, y2 the single spoofed pilot" and the swap.
class LlrK1Detector {
public:
    LlrK1Detector(const CMat& R_L, const CMat& R_E, const TrainingParams& params);
    double statistic(const CVec& y1, const CVec& y2) const;
    Hypothesis decide(const CVec& y1, const CVec& y2) const;

    // log p(y_lu, y_eve) with y_lu ~ CN(0, R_L + s I) and y_eve ~ CN(0, b1^2 R_E + s I).
    double log_density(const CVec& y_lu, const CVec& y_eve) const;

private:
    CMat inv_lu_;
    CMat inv_eve_;
    CMat diff_;  // inv_eve - inv_lu
    double log_norm_ = 0.0;
};

double llr_k1_statistic(const CVec& y1, const CVec& y2, const CMat& R_L, const CMat& R_E,
                        const TrainingParams& params);
Hypothesis llr_k1(const CVec& y1, const CVec& y2, const CMat& R_L, const CMat& R_E,
                  const TrainingParams& params);

Hypothesis power_test(const CVec& y1, const CVec& y2);

// GLLR after a K-pilot hit: the unknown relative spoofing phase is maximized out.
class GllrDetector {
public:
    GllrDetector(const CMat& R_L, const CMat& R_E, const TrainingParams& params, int K = 2);
    double statistic(const CVec& y1, const CVec& y2) const;
    Hypothesis decide(const CVec& y1, const CVec& y2) const;

    // max over the relative phase of log p(y_lu, y_eve) under the hit model.
    double max_log_density(const CVec& y_lu, const CVec& y_eve) const;

    const CMat& block_a() const { return A_; }
    const CMat& block_b() const { return B_; }
    const CMat& block_c() const { return C_; }

private:
    CMat A_;
    CMat B_;
    CMat C_;
    double log_norm_ = 0.0;
};

double gllr_statistic(const CVec& y1, const CVec& y2, const CMat& R_L, const CMat& R_E,
                      const TrainingParams& params, int K = 2);
Hypothesis gllr_k2(const CVec& y1, const CVec& y2, const CMat& R_L, const CMat& R_E,
                   const TrainingParams& params, int K = 2);

// ---- distance methods ------------------------------------------------------

// min over phi of ||u - e^{j phi} v||^2.
double min_phase_distance(const CVec& u, const CVec& v);
// min over complex a of ||u - a v||^2; ||u||^2 when v = 0.
double min_scale_distance(const CVec& u, const CVec& v);

ThresholdSpec psa_threshold(int M, double sigma_z2, double eta);
ThresholdSpec pja_threshold(int M, double sigma_z2, double eta);

// Cyclic neighbour rule on the given order; needs at least three observations.
DetectionOutcome identify_lu_psa(std::span<const CVec> ys, double epsilon);
DetectionOutcome identify_lu_pja(std::span<const CVec> ys, double epsilon);

// ---- attack presence and unknown K -----------------------------------------

// LLR between no attack (R_L + s I) and a K-pilot hit (R_L + b_K^2 R_E + s I).
class PresenceDetector {
public:
    PresenceDetector(const CMat& R_L, const CMat& R_E, const TrainingParams& params, int K = 1);
    // true when the attack-free hypothesis wins (ties included)
    bool no_attack(const CVec& y) const;
    double statistic(const CVec& y) const;  // ln p(y | none) - ln p(y | hit)

private:
    CMat diff_;  // inv_hit - inv_none
    double logdet_gap_ = 0.0;  // ln|hit| - ln|none|
};

enum class PresenceDecision { NoAttack, Hit };
PresenceDecision detect_spoof_presence(const CVec& y, const CMat& R_L, const CMat& R_E,
                                       const TrainingParams& params, int K = 1);

// Reusable detector bank for one (R_L, R_E, params) configuration. Presence
// tests are prepared for K = 1..max_K and built on demand beyond that.
class PsaResolver {
public:
    PsaResolver(const CMat& R_L, const CMat& R_E, const TrainingParams& params, double epsilon, int max_K);

    // Outcome indices are positions in ys.
    DetectionOutcome resolve(std::span<const CVec> ys) const;

    const LlrK1Detector& llr() const { return llr_; }
    const GllrDetector& gllr() const { return gllr_; }
    double epsilon() const { return epsilon_; }

private:
    bool presence_no_attack(const CVec& y, int K) const;

    CMat R_L_;
    CMat R_E_;
    TrainingParams params_;
    double epsilon_;
    LlrK1Detector llr_;
    GllrDetector gllr_;
    std::vector<PresenceDetector> presence_;  // index K - 1
};

// Unknown-K decision tree over the surviving observations. lu_index of the
// outcome is the pilot index (an entry of survivors).
DetectionOutcome resolve_unknown_k(const ObservationSet& obs, const std::vector<int>& survivors, const CMat& R_L,
                                   const CMat& R_E, const TrainingParams& params, double epsilon);

} // namespace rct

#endif
