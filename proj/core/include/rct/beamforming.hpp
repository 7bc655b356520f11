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

#ifndef RCT_BEAMFORMING_HPP
#define RCT_BEAMFORMING_HPP

#include "rct/estimation.hpp"
#include "rct/numerics.hpp"

namespace rct {

enum class BeamDesign { OptimalGrq, LowComplexity, ZeroForcing, MatchedFilter };

struct Beamformer {
    CVec v;  // unit norm
    BeamDesign design = BeamDesign::MatchedFilter;
};

struct DownlinkParams {
    double p_B = 1.0;
    double sigma_L2 = 1.0;
    double sigma_E2 = 1.0;

    void validate() const;
};

struct LinkRates {
    double r_L = 0.0;  // ln(1 + SNR_L)
    double r_E = 0.0;  // ln(1 + SNR_E)
    double secrecy() const { return r_L - r_E; }
};

LinkRates link_rates(const CVec& v, const CVec& h_L, const CVec& h_E, const DownlinkParams& dl);

// ln((1 + p_B |v^H h_L|^2 / sigma_L2) / (1 + p_B |v^H h_E|^2 / sigma_E2)), unclamped.
double secrecy_rate(const CVec& v, const CVec& h_L, const CVec& h_E, const DownlinkParams& dl);

// I + (p_B / sigma2) (hhat hhat^H + mse): average received-SNR matrix shifted by I.
CMat average_snr_matrix(const ChannelEstimate& est, double p_B, double sigma2);

// (v^H A v) / (v^H B v).
double rayleigh_quotient(const CVec& v, const CMat& A, const CMat& B);

Beamformer sb_optimal(const ChannelEstimate& est_L, const ChannelEstimate& est_E, const DownlinkParams& dl);

// v proportional to Hbar_E^{-1} hhat_L, the inverse applied through a rank-one update.
Beamformer sb_lowcomplexity(const ChannelEstimate& est_L, const ChannelEstimate& est_E, const DownlinkParams& dl);

// Dominant direction of the LU average-SNR matrix inside the null space of dir_E.
Beamformer zf_pja(const ChannelEstimate& est_L, const ChannelEstimate& dir_E, const DownlinkParams& dl);

// Orthonormal basis (M x (M - 1)) of the orthogonal complement of a unit vector.
CMat null_space_basis(const CVec& u);

Beamformer matched_filter_beam(const CVec& hhat);

// Bounds on an expected log-ratio ln((1 + X) / (1 + Y)) from first and inverse
// moments of nonnegative X and Y; both the expectation and ln((1 + EX) / (1 + EY))
// lie in [lower, upper].
struct RateBounds {
    double lower = 0.0;
    double upper = 0.0;
};
RateBounds average_rate_bounds(double mean_x, double mean_inv_x, double mean_y, double mean_inv_y);

} // namespace rct

#endif
