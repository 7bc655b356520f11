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

#include "rct/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "rct/error.hpp"

namespace rct {

namespace {

void check_pair(const CMat& R_L, const CMat& R_E)
{
    require(R_L.rows() == R_L.cols() && R_L.rows() > 0, ErrorCode::InvalidDims, "R_L must be square");
    require(R_L.rows() == R_E.rows() && R_L.cols() == R_E.cols(), ErrorCode::DimMismatch,
            "R_L and R_E dimensions differ");
}

// reference is the natural magnitude of the form; anything below 1e-9 of it
// is loading residue and the hypotheses are indistinguishable.
EdrReport error_probability(const CMat& form, double reference, EdrMethod method, const QuadformOptions& opts)
{
    EdrReport rep;
    rep.method = method;
    const SpectrumDecomposition spec = spectrum_decompose(form);
    const double scale = form.cwiseAbs().maxCoeff();
    if (scale <= 1e-9 * reference || (spec.positive.empty() && spec.negative.empty())) {
        rep.value = 0.5;
        rep.tie = true;
        return rep;
    }
    rep.value = quadform_tail(spec, 0.0, opts).lower;
    return rep;
}

} // namespace

CMat llr_error_form(const CMat& R_L, const CMat& R_E, const TrainingParams& params)
{
    check_pair(R_L, R_E);
    const Eigen::Index M = R_L.rows();
    const CMat I = CMat::Identity(M, M);
    const CMat Rl = lu_observation_cov(R_L, params);
    const CMat Re = eve_observation_cov(R_E, params, 1);
    const CMat Sl = hermitian_sqrt(Rl);
    const CMat Se = hermitian_sqrt(Re);
    const CMat xi1 = hermitian_part(Sl * solve_loaded(Re, Sl)) - I;
    const CMat xi2 = hermitian_part(Se * solve_loaded(Rl, Se)) - I;
    return block_diag(xi1, xi2);
}

EdrReport edr12_analytic(const CMat& R_L, const CMat& R_E, const TrainingParams& params,
                         const QuadformOptions& opts)
{
    // Both diagonal blocks are whitened covariances minus I, so the scale is 1.
    return error_probability(llr_error_form(R_L, R_E, params), 1.0, EdrMethod::SingleSpoofLlr, opts);
}

CMat power_error_form(const CMat& R_L, const CMat& R_E, const TrainingParams& params, int K)
{
    check_pair(R_L, R_E);
    const Eigen::Index M = R_L.rows();
    const CMat S = hermitian_sqrt(hit_pair_cov(R_L, R_E, params, K));
    RVec signs(2 * M);
    signs.head(M).setOnes();
    signs.tail(M).setConstant(-1.0);
    return hermitian_part(S * signs.asDiagonal() * S);
}

EdrReport edr22_power_analytic(const CMat& R_L, const CMat& R_E, const TrainingParams& params, int K,
                               const QuadformOptions& opts)
{
    const double reference = hit_pair_cov(R_L, R_E, params, K).cwiseAbs().maxCoeff();
    return error_probability(power_error_form(R_L, R_E, params, K), reference, EdrMethod::HitPowerComparison,
                             opts);
}

double pf_psa_bound(double eps, int M, double sigma_z2)
{
    require(eps >= 0.0, ErrorCode::InvalidArgument, "epsilon must be non-negative");
    require(M >= 1 && sigma_z2 > 0.0, ErrorCode::InvalidArgument, "need M >= 1 and sigma_z2 > 0");
    if (eps == 0.0)
        return 1.0;
    return gamma_q(M, eps / (2.0 * sigma_z2));
}

CMat distance_lower_form(const CMat& R_L, const CMat& R_E, const TrainingParams& params)
{
    check_pair(R_L, R_E);
    const Eigen::Index M = R_L.rows();
    const double tr = R_E.trace().real();
    require(tr > 0.0, ErrorCode::InvalidArgument, "R_E must have positive trace");
    const CMat I = CMat::Identity(M, M);
    const CMat S = hermitian_sqrt(R_L + 2.0 * params.sigma_z2() * I);
    const CMat Q = I - R_E / tr;
    return hermitian_part(S * Q * S);
}

EdrReport edr_upper_approx(double eps, const CMat& R_L, const CMat& R_E, const TrainingParams& params,
                           double eta, const QuadformOptions& opts)
{
    require(eps >= 0.0, ErrorCode::InvalidArgument, "epsilon must be non-negative");
    require(eta >= 0.0 && eta <= 1.0, ErrorCode::InvalidArgument, "eta must lie in [0, 1]");
    EdrReport rep;
    rep.method = EdrMethod::DistanceUpperApprox;
    const double below = quadform_tail(distance_lower_form(R_L, R_E, params), eps, opts).lower;
    const double raw = 2.0 * below + eta;
    rep.value = std::min(1.0, raw);
    rep.clipped = raw > 1.0;
    return rep;
}

EdrReport pf_pja_bound(double eps, int M, double sigma_z2)
{
    require(eps > 0.0, ErrorCode::InvalidArgument, "epsilon must be positive");
    require(M >= 1 && sigma_z2 > 0.0, ErrorCode::InvalidArgument, "need M >= 1 and sigma_z2 > 0");
    EdrReport rep;
    rep.method = EdrMethod::PjaFalseSplitBound;
    const double x = eps / sigma_z2;
    double sum = 0.0;
    for (int m = 1; m <= M; ++m)
        sum += gamma_p(m, x);
    const double raw = sum / x;
    rep.value = std::clamp(raw, 0.0, 1.0);
    rep.clipped = raw != rep.value;
    return rep;
}

} // namespace rct
