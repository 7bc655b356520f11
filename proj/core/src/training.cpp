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

#include "rct/training.hpp"

#include <algorithm>
#include <cmath>

#include "rct/error.hpp"

namespace rct {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

PilotSet generate_pilots(int tau, int count)
{
    require(tau >= 1 && count >= 1, ErrorCode::InvalidDims, "pilot length and count must be positive");
    require(count <= tau, ErrorCode::InvalidDims, "more pilots than symbols");
    PilotSet set{tau, count, CMat(tau, count)};
    for (int t = 0; t < tau; ++t)
        for (int n = 0; n < count; ++n) {
            // reduce the exponent first so large tau keeps full phase accuracy
            const long long k = (static_cast<long long>(t) * n) % tau;
            set.X(t, n) = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / tau);
        }
    return set;
}

void TrainingParams::validate() const
{
    require(tau >= 1, ErrorCode::InvalidArgument, "tau must be positive");
    require(p_L > 0.0 && std::isfinite(p_L), ErrorCode::InvalidArgument, "p_L must be positive");
    require(p_E >= 0.0 && std::isfinite(p_E), ErrorCode::InvalidArgument, "p_E must be non-negative");
    require(sigma_t2 >= 0.0 && std::isfinite(sigma_t2), ErrorCode::InvalidArgument,
            "training noise power must be non-negative");
}

double TrainingParams::phi() const { return 1.0 / (tau * std::sqrt(p_L)); }

double TrainingParams::sigma_z2() const { return sigma_t2 / (tau * p_L); }

double TrainingParams::beta_psa(int K) const
{
    require(K >= 1, ErrorCode::InvalidK, "K must be at least 1");
    return std::sqrt(p_E / (K * p_L));
}

double TrainingParams::beta_pja() const { return std::sqrt(p_E / p_L); }

CMat synthesize_uplink(const PilotSet& pilots, int lu_index, const CVec& h_L, const CVec& h_E,
                       const CVec& a, const TrainingParams& params, Rng& rng)
{
    params.validate();
    require(lu_index >= 0 && lu_index < pilots.count, ErrorCode::OutOfRange, "LU pilot index out of range");
    require(h_L.size() == h_E.size() && h_L.size() > 0, ErrorCode::DimMismatch, "channel dimensions differ");
    require(a.size() == pilots.tau, ErrorCode::DimMismatch, "attack sequence length differs from tau");
    const Eigen::Index M = h_L.size();
    CMat Y = std::sqrt(params.p_L) * h_L * pilots.X.col(lu_index).adjoint();
    if (params.p_E > 0.0)
        Y.noalias() += std::sqrt(params.p_E) * h_E * a.adjoint();
    if (params.sigma_t2 > 0.0)
        for (Eigen::Index t = 0; t < pilots.tau; ++t)
            for (Eigen::Index m = 0; m < M; ++m)
                Y(m, t) += rng.cn(params.sigma_t2);
    return Y;
}

ObservationSet matched_filter(const CMat& Y, const PilotSet& pilots, const TrainingParams& params)
{
    params.validate();
    require(Y.cols() == pilots.tau, ErrorCode::DimMismatch, "frame length differs from tau");
    ObservationSet obs;
    const CMat all = params.phi() * (Y * pilots.X);
    obs.y.reserve(pilots.count);
    for (int n = 0; n < pilots.count; ++n)
        obs.y.emplace_back(all.col(n));
    return obs;
}

double default_prescreen_threshold(int antennas, double sigma_z2)
{
    return sigma_z2 * (antennas + 4.0 * std::sqrt(static_cast<double>(antennas)));
}

PrescreenResult prescreen(const ObservationSet& obs, double threshold)
{
    PrescreenResult out;
    for (int n = 0; n < obs.size(); ++n)
        if (obs.y[n].squaredNorm() > threshold)
            out.survivors.push_back(n);
    return out;
}

PrescreenResult prescreen_genie(const ObservationSet& obs)
{
    const auto& truth = obs.truth;
    PrescreenResult out;
    for (int n = 0; n < obs.size(); ++n) {
        bool keep = n == truth.lu_index;
        if (truth.attack == AttackKind::PJA)
            keep = true;
        else if (truth.attack == AttackKind::PSA)
            keep = keep || std::binary_search(truth.eve_pilots.begin(), truth.eve_pilots.end(), n);
        if (keep)
            out.survivors.push_back(n);
    }
    return out;
}

CMat lu_observation_cov(const CMat& R_L, const TrainingParams& params)
{
    return R_L + params.sigma_z2() * CMat::Identity(R_L.rows(), R_L.cols());
}

CMat eve_observation_cov(const CMat& R_E, const TrainingParams& params, int K)
{
    const double b = params.beta_psa(K);
    return b * b * R_E + params.sigma_z2() * CMat::Identity(R_E.rows(), R_E.cols());
}

CMat spoofed_lu_observation_cov(const CMat& R_L, const CMat& R_E, const TrainingParams& params, int K)
{
    require(R_L.rows() == R_E.rows() && R_L.cols() == R_E.cols(), ErrorCode::DimMismatch,
            "covariance dimensions differ");
    const double b = params.beta_psa(K);
    return R_L + b * b * R_E + params.sigma_z2() * CMat::Identity(R_L.rows(), R_L.cols());
}

CMat hit_pair_cov(const CMat& R_L, const CMat& R_E, const TrainingParams& params, int K)
{
    const Eigen::Index M = R_L.rows();
    const double b2 = params.beta_psa(K) * params.beta_psa(K);
    CMat G(2 * M, 2 * M);
    G.topLeftCorner(M, M) = spoofed_lu_observation_cov(R_L, R_E, params, K);
    G.topRightCorner(M, M) = b2 * R_E;
    G.bottomLeftCorner(M, M) = b2 * R_E;
    G.bottomRightCorner(M, M) = eve_observation_cov(R_E, params, K);
    return G;
}

} // namespace rct
