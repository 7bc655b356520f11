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

#include "rct/estimation.hpp"

#include <cmath>

#include "rct/error.hpp"

namespace rct {

namespace {

// hhat = P K^{-1} y, mse = R - P K^{-1} P^H, with P the cross covariance.
ChannelEstimate linear_estimate(const CVec& y, const CMat& R, const CMat& P, const CMat& kernel)
{
    require(y.size() == kernel.rows(), ErrorCode::DimMismatch, "observation dimension mismatch");
    ChannelEstimate est;
    est.hhat = P * solve_loaded(kernel, y);
    est.mse = hermitian_part(R - P * solve_loaded(kernel, CMat(P.adjoint())));
    return est;
}

CMat identity(Eigen::Index M) { return CMat::Identity(M, M); }

bool is_zero(const CMat& R) { return R.cwiseAbs().maxCoeff() == 0.0; }

} // namespace

ChannelEstimate mmse_hl_psa(const CVec& y_L, bool hit, int K, const CMat& R_L, const CMat& R_E,
                            const TrainingParams& params)
{
    const Eigen::Index M = R_L.rows();
    if (is_zero(R_L))
        return ChannelEstimate{CVec::Zero(M), CMat::Zero(M, M)};
    const CMat kernel = hit ? spoofed_lu_observation_cov(R_L, R_E, params, K) : lu_observation_cov(R_L, params);
    return linear_estimate(y_L, R_L, R_L, kernel);
}

ChannelEstimate mmse_he_psa_single(const CVec& y_L, const CMat& R_L, const CMat& R_E, const TrainingParams& params)
{
    const Eigen::Index M = R_E.rows();
    const double b = params.beta_psa(1);
    if (b == 0.0 || is_zero(R_E))
        return ChannelEstimate{CVec::Zero(M), R_E};
    return linear_estimate(y_L, R_E, b * R_E, spoofed_lu_observation_cov(R_L, R_E, params, 1));
}

CVec combine_eve_obs(const std::vector<CVec>& ys)
{
    require(!ys.empty(), ErrorCode::InvalidArgument, "need at least one observation");
    CVec sum = ys.front();
    for (std::size_t i = 1; i < ys.size(); ++i) {
        require(ys[i].size() == sum.size(), ErrorCode::DimMismatch, "observation dimension mismatch");
        const Complex g = ys[i].dot(ys.front());  // <y_i, y_1>
        const double mag = std::abs(g);
        const Complex kappa = mag > 0.0 ? g / mag : Complex(1.0, 0.0);
        sum += kappa * ys[i];
    }
    return sum / static_cast<double>(ys.size());
}

ChannelEstimate mmse_he_psa_multi(const CVec& y_E, int Q_E, int K, const CMat& R_E, const TrainingParams& params)
{
    require(Q_E >= 1, ErrorCode::InvalidArgument, "need at least one Eve observation");
    const Eigen::Index M = R_E.rows();
    const double b = params.beta_psa(K);
    if (b == 0.0 || is_zero(R_E))
        return ChannelEstimate{CVec::Zero(M), R_E};
    const CMat kernel = b * b * R_E + (params.sigma_z2() / Q_E) * identity(M);
    return linear_estimate(y_E, R_E, b * R_E, kernel);
}

ChannelEstimate lmmse_hl_pja(const CVec& y_L, const CMat& R_L, const CMat& R_E, const TrainingParams& params)
{
    const Eigen::Index M = R_L.rows();
    if (is_zero(R_L))
        return ChannelEstimate{CVec::Zero(M), CMat::Zero(M, M)};
    const double b = params.beta_pja();
    const CMat kernel = R_L + (b * b / params.tau) * R_E + params.sigma_z2() * identity(M);
    return linear_estimate(y_L, R_L, R_L, kernel);
}

ChannelEstimate eve_direction_pja(const CMat& Y_E)
{
    require(Y_E.rows() >= 1 && Y_E.cols() >= 1, ErrorCode::InvalidDims, "need at least one observation");
    ChannelEstimate est;
    est.kind = EstimateKind::DirectionOnly;
    const CMat S = Y_E * Y_E.adjoint();
    if (S.cwiseAbs().maxCoeff() == 0.0) {
        est.hhat = CVec::Unit(Y_E.rows(), 0);
        est.degenerate = true;
        return est;
    }
    est.hhat = dominant_eigvec(S);
    return est;
}

ChannelEstimate mmse_no_attack(const CVec& y, const CMat& R_L, const TrainingParams& params)
{
    return mmse_hl_psa(y, false, 1, R_L, R_L, params);
}

} // namespace rct
