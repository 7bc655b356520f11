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

#ifndef RCT_ANALYSIS_HPP
#define RCT_ANALYSIS_HPP

#include "rct/numerics.hpp"
#include "rct/quadform.hpp"
#include "rct/training.hpp"

namespace rct {

// Error-form spectra span several decades (noise-floor eigenvalues next to
// array-gain ones), so the evaluators allow far longer series than the engine
// default.
inline constexpr QuadformOptions kAnalysisQuadformOptions{1e-9, 2000000};

enum class EdrMethod {
    SingleSpoofLlr,       // K = 1 miss, likelihood-ratio detector (exact)
    HitPowerComparison,   // K = 2 hit, power comparison (exact)
    PsaFalseSplitBound,   // distance method, Eve-only pair exceeding epsilon
    DistanceUpperApprox,  // distance method, union-style EDR approximation
    PjaFalseSplitBound,   // jamming distance, Eve-only pair exceeding epsilon
};

struct EdrReport {
    double value = 0.0;
    EdrMethod method = EdrMethod::SingleSpoofLlr;
    bool clipped = false;
    bool tie = false;  // hypotheses indistinguishable, value fixed at 1/2
};

// Error rate of the K = 1 miss LLR detector, as P{w^H Xi w < 0} with
// Xi = blockdiag(Xi_1 - I, Xi_2 - I).
EdrReport edr12_analytic(const CMat& R_L, const CMat& R_E, const TrainingParams& params,
                         const QuadformOptions& opts = kAnalysisQuadformOptions);
CMat llr_error_form(const CMat& R_L, const CMat& R_E, const TrainingParams& params);

// Error rate of the power comparison after a K-pilot hit (K = 2 by default).
EdrReport edr22_power_analytic(const CMat& R_L, const CMat& R_E, const TrainingParams& params, int K = 2,
                               const QuadformOptions& opts = kAnalysisQuadformOptions);
CMat power_error_form(const CMat& R_L, const CMat& R_E, const TrainingParams& params, int K = 2);

// Gamma(M, eps / (2 sigma_z2)) / Gamma(M).
double pf_psa_bound(double eps, int M, double sigma_z2);

// min(1, 2 P{alpha^H Qbar alpha <= eps} + eta).
EdrReport edr_upper_approx(double eps, const CMat& R_L, const CMat& R_E, const TrainingParams& params,
                           double eta, const QuadformOptions& opts = kAnalysisQuadformOptions);
CMat distance_lower_form(const CMat& R_L, const CMat& R_E, const TrainingParams& params);

// sigma_z2 M / eps - exp(-eps / sigma_z2) sum_{m<M} sum_{k<=m} (eps / sigma_z2)^(k-1) / k!,
// evaluated as (1/x) sum_{m=1}^{M} P(m, x) with x = eps / sigma_z2.
EdrReport pf_pja_bound(double eps, int M, double sigma_z2);

} // namespace rct

#endif
