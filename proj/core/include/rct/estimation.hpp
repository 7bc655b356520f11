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

#ifndef RCT_ESTIMATION_HPP
#define RCT_ESTIMATION_HPP

#include <vector>

#include "rct/numerics.hpp"
#include "rct/training.hpp"

namespace rct {

enum class EstimateKind { Full, DirectionOnly };

struct ChannelEstimate {
    CVec hhat;
    CMat mse;  // error covariance; empty for DirectionOnly
    EstimateKind kind = EstimateKind::Full;
    bool degenerate = false;  // direction of a zero matrix, e_1 returned
};

// LU channel under PSA. A hit uses the kernel R_L + (p_E / (K p_L)) R_E + s I,
// a miss the kernel R_L + s I.
ChannelEstimate mmse_hl_psa(const CVec& y_L, bool hit, int K, const CMat& R_L, const CMat& R_E,
                            const TrainingParams& params);

// Eve channel from the LU observation after a single-pilot hit. The target is
// exp(j w) h_E with w the unknown spoofing phase.
ChannelEstimate mmse_he_psa_single(const CVec& y_L, const CMat& R_L, const CMat& R_E, const TrainingParams& params);

// (1/Q) sum kappa_i y_i with kappa_i aligning y_i to y_1 in phase.
CVec combine_eve_obs(const std::vector<CVec>& ys);

// Eve channel from Q_E phase-aligned Eve-only observations of a K-pilot attack.
ChannelEstimate mmse_he_psa_multi(const CVec& y_E, int Q_E, int K, const CMat& R_E, const TrainingParams& params);

// Linear estimate of the LU channel under jamming.
ChannelEstimate lmmse_hl_pja(const CVec& y_L, const CMat& R_L, const CMat& R_E, const TrainingParams& params);

// Dominant left singular direction of the non-LU observations (columns of Y_E).
ChannelEstimate eve_direction_pja(const CMat& Y_E);

// Estimate that ignores any attack: R_L (R_L + s I)^{-1} y.
ChannelEstimate mmse_no_attack(const CVec& y, const CMat& R_L, const TrainingParams& params);

} // namespace rct

#endif
