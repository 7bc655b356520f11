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

#include "rct/beamforming.hpp"

#include <cmath>
#include <string>

#include "rct/error.hpp"

namespace rct {

namespace {

void check_full(const ChannelEstimate& est, const char* what)
{
    require(est.kind == EstimateKind::Full, ErrorCode::InvalidArgument, std::string(what) + " must be a full estimate");
    require(est.mse.rows() == est.hhat.size() && est.mse.cols() == est.hhat.size(), ErrorCode::DimMismatch,
            std::string(what) + " has inconsistent error covariance");
}

CVec unit(CVec v)
{
    const double n = v.norm();
    require(n > 0.0, ErrorCode::Singular, "beamformer direction vanished");
    v /= n;
    normalize_phase(v);
    return v;
}

} // namespace

void DownlinkParams::validate() const
{
    require(p_B > 0.0 && sigma_L2 > 0.0 && sigma_E2 > 0.0, ErrorCode::InvalidArgument,
            "downlink powers must be positive");
}

LinkRates link_rates(const CVec& v, const CVec& h_L, const CVec& h_E, const DownlinkParams& dl)
{
    dl.validate();
    require(v.size() == h_L.size() && v.size() == h_E.size(), ErrorCode::DimMismatch, "dimension mismatch");
    LinkRates r;
    r.r_L = std::log1p(dl.p_B * std::norm(v.dot(h_L)) / dl.sigma_L2);
    r.r_E = std::log1p(dl.p_B * std::norm(v.dot(h_E)) / dl.sigma_E2);
    return r;
}

double secrecy_rate(const CVec& v, const CVec& h_L, const CVec& h_E, const DownlinkParams& dl)
{
    return link_rates(v, h_L, h_E, dl).secrecy();
}

CMat average_snr_matrix(const ChannelEstimate& est, double p_B, double sigma2)
{
    check_full(est, "estimate");
    const Eigen::Index M = est.hhat.size();
    return hermitian_part(CMat::Identity(M, M) + (p_B / sigma2) * (est.hhat * est.hhat.adjoint() + est.mse));
}

double rayleigh_quotient(const CVec& v, const CMat& A, const CMat& B)
{
    return v.dot(A * v).real() / v.dot(B * v).real();
}

Beamformer sb_optimal(const ChannelEstimate& est_L, const ChannelEstimate& est_E, const DownlinkParams& dl)
{
    dl.validate();
    check_full(est_L, "LU estimate");
    check_full(est_E, "Eve estimate");
    require(est_L.hhat.size() == est_E.hhat.size(), ErrorCode::DimMismatch, "estimate dimensions differ");
    const CMat HL = average_snr_matrix(est_L, dl.p_B, dl.sigma_L2);
    const CMat HE = average_snr_matrix(est_E, dl.p_B, dl.sigma_E2);
    return Beamformer{dominant_gen_eigvec(HL, HE), BeamDesign::OptimalGrq};
}

Beamformer sb_lowcomplexity(const ChannelEstimate& est_L, const ChannelEstimate& est_E, const DownlinkParams& dl)
{
    dl.validate();
    check_full(est_L, "LU estimate");
    check_full(est_E, "Eve estimate");
    const Eigen::Index M = est_L.hhat.size();
    require(est_E.hhat.size() == M, ErrorCode::DimMismatch, "estimate dimensions differ");
    const double c = dl.p_B / dl.sigma_E2;
    const CMat B = hermitian_part(CMat::Identity(M, M) + c * est_E.mse);
    const CVec mu = std::sqrt(c) * est_E.hhat;
    const CVec b_h = solve_loaded(B, est_L.hhat);
    const CVec b_mu = solve_loaded(B, mu);
    const Complex num = mu.dot(b_h);           // mu^H B^{-1} hhat_L
    const double den = 1.0 + mu.dot(b_mu).real();
    return Beamformer{unit(b_h - b_mu * (num / den)), BeamDesign::LowComplexity};
}

CMat null_space_basis(const CVec& u)
{
    const Eigen::Index M = u.size();
    require(M >= 2, ErrorCode::DimTooSmall, "null space needs at least two antennas");
    require(u.norm() > 0.0, ErrorCode::InvalidArgument, "direction must be nonzero");
    const CMat Q = Eigen::HouseholderQR<CMat>(CMat(u / u.norm())).householderQ();
    return Q.rightCols(M - 1);
}

Beamformer zf_pja(const ChannelEstimate& est_L, const ChannelEstimate& dir_E, const DownlinkParams& dl)
{
    dl.validate();
    check_full(est_L, "LU estimate");
    const Eigen::Index M = est_L.hhat.size();
    require(M >= 2, ErrorCode::DimTooSmall, "zero forcing needs at least two antennas");
    require(dir_E.hhat.size() == M, ErrorCode::DimMismatch, "direction dimension differs");
    const CMat P = null_space_basis(dir_E.hhat);
    const CMat G = hermitian_part(P.adjoint() * (est_L.hhat * est_L.hhat.adjoint() + est_L.mse) * P);
    CVec v = P * dominant_eigvec(G);
    // re-project to remove rounding leakage along the nulled direction
    const CVec d = dir_E.hhat / dir_E.hhat.norm();
    v -= d * d.dot(v);
    return Beamformer{unit(v), BeamDesign::ZeroForcing};
}

Beamformer matched_filter_beam(const CVec& hhat) { return Beamformer{unit(hhat), BeamDesign::MatchedFilter}; }

RateBounds average_rate_bounds(double mean_x, double mean_inv_x, double mean_y, double mean_inv_y)
{
    require(mean_x >= 0.0 && mean_y >= 0.0 && mean_inv_x >= 0.0 && mean_inv_y >= 0.0, ErrorCode::InvalidArgument,
            "moments of nonnegative variables must be nonnegative");
    const auto harmonic = [](double mean_inv) { return std::isinf(mean_inv) ? 0.0 : 1.0 / mean_inv; };
    RateBounds b;
    b.lower = std::log1p(harmonic(mean_inv_x)) - std::log1p(mean_y);
    b.upper = std::log1p(mean_x) - std::log1p(harmonic(mean_inv_y));
    return b;
}

} // namespace rct
