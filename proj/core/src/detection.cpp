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

#include "rct/detection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rct/analysis.hpp"
#include "rct/error.hpp"

namespace rct {

namespace {

CMat loaded_inverse(const CMat& K)
{
    return hermitian_part(solve_loaded(K, CMat(CMat::Identity(K.rows(), K.cols()))));
}

double quad(const CVec& y, const CMat& A) { return y.dot(A * y).real(); }

void check_pair(const CVec& y1, const CVec& y2, Eigen::Index M)
{
    require(y1.size() == M && y2.size() == M, ErrorCode::DimMismatch, "observation dimension mismatch");
}

Hypothesis from_statistic(double T) { return T >= 0.0 ? Hypothesis::H0 : Hypothesis::H1; }

using Distance = std::function<double(const CVec&, const CVec&)>;

DetectionOutcome fallback_argmax(std::span<const CVec> ys, const Distance& dist, DetectionOutcome out)
{
    const int Q = static_cast<int>(ys.size());
    int best = 0;
    double best_sum = -1.0;
    for (int n = 0; n < Q; ++n) {
        double sum = 0.0;
        for (int m = 0; m < Q; ++m)
            if (m != n)
                sum += dist(ys[n], ys[m]);
        if (sum > best_sum) {
            best_sum = sum;
            best = n;
        }
    }
    out.lu_index = best;
    out.flags.fallback_used = true;
    return out;
}

void check_observations(std::span<const CVec> ys)
{
    require(ys.size() >= 3, ErrorCode::TooFewObservations, "distance rule needs at least three observations");
    for (const auto& y : ys)
        require(y.size() == ys.front().size(), ErrorCode::DimMismatch, "observation dimension mismatch");
}

} // namespace

// ---- two-observation tests -------------------------------------------------

LlrK1Detector::LlrK1Detector(const CMat& R_L, const CMat& R_E, const TrainingParams& params)
{
    const CMat Rl = lu_observation_cov(R_L, params);
    const CMat Re = eve_observation_cov(R_E, params, 1);
    inv_lu_ = loaded_inverse(Rl);
    inv_eve_ = loaded_inverse(Re);
    diff_ = inv_eve_ - inv_lu_;
    const double M = static_cast<double>(R_L.rows());
    log_norm_ = -2.0 * M * std::log(kPi) - log_det_pd(Rl) - log_det_pd(Re);
}

double LlrK1Detector::statistic(const CVec& y1, const CVec& y2) const
{
    check_pair(y1, y2, diff_.rows());
    return quad(y1, diff_) - quad(y2, diff_);
}

Hypothesis LlrK1Detector::decide(const CVec& y1, const CVec& y2) const { return from_statistic(statistic(y1, y2)); }

double LlrK1Detector::log_density(const CVec& y_lu, const CVec& y_eve) const
{
    check_pair(y_lu, y_eve, diff_.rows());
    return log_norm_ - quad(y_lu, inv_lu_) - quad(y_eve, inv_eve_);
}

double llr_k1_statistic(const CVec& y1, const CVec& y2, const CMat& R_L, const CMat& R_E,
                        const TrainingParams& params)
{
    return LlrK1Detector(R_L, R_E, params).statistic(y1, y2);
}

Hypothesis llr_k1(const CVec& y1, const CVec& y2, const CMat& R_L, const CMat& R_E, const TrainingParams& params)
{
    return LlrK1Detector(R_L, R_E, params).decide(y1, y2);
}

Hypothesis power_test(const CVec& y1, const CVec& y2)
{
    require(y1.size() == y2.size(), ErrorCode::DimMismatch, "observation dimension mismatch");
    return y1.squaredNorm() >= y2.squaredNorm() ? Hypothesis::H0 : Hypothesis::H1;
}

GllrDetector::GllrDetector(const CMat& R_L, const CMat& R_E, const TrainingParams& params, int K)
{
    const Eigen::Index M = R_L.rows();
    const CMat G = hit_pair_cov(R_L, R_E, params, K);
    const CMat Ginv = loaded_inverse(G);
    A_ = Ginv.topLeftCorner(M, M);
    C_ = Ginv.topRightCorner(M, M);
    B_ = Ginv.bottomRightCorner(M, M);
    log_norm_ = -2.0 * static_cast<double>(M) * std::log(kPi) - log_det_pd(G);
}

double GllrDetector::statistic(const CVec& y1, const CVec& y2) const
{
    check_pair(y1, y2, A_.rows());
    const CMat BmA = B_ - A_;
    return quad(y1, BmA) - quad(y2, BmA) + 2.0 * std::abs(y1.dot(C_ * y2)) - 2.0 * std::abs(y2.dot(C_ * y1));
}

Hypothesis GllrDetector::decide(const CVec& y1, const CVec& y2) const { return from_statistic(statistic(y1, y2)); }

double GllrDetector::max_log_density(const CVec& y_lu, const CVec& y_eve) const
{
    check_pair(y_lu, y_eve, A_.rows());
    return log_norm_ - (quad(y_lu, A_) + quad(y_eve, B_) - 2.0 * std::abs(y_lu.dot(C_ * y_eve)));
}

double gllr_statistic(const CVec& y1, const CVec& y2, const CMat& R_L, const CMat& R_E,
                      const TrainingParams& params, int K)
{
    return GllrDetector(R_L, R_E, params, K).statistic(y1, y2);
}

Hypothesis gllr_k2(const CVec& y1, const CVec& y2, const CMat& R_L, const CMat& R_E, const TrainingParams& params,
                   int K)
{
    return GllrDetector(R_L, R_E, params, K).decide(y1, y2);
}

// ---- distance methods ------------------------------------------------------

double min_phase_distance(const CVec& u, const CVec& v)
{
    require(u.size() == v.size(), ErrorCode::DimMismatch, "vector dimension mismatch");
    return std::max(0.0, u.squaredNorm() + v.squaredNorm() - 2.0 * std::abs(u.dot(v)));
}

double min_scale_distance(const CVec& u, const CVec& v)
{
    require(u.size() == v.size(), ErrorCode::DimMismatch, "vector dimension mismatch");
    const double vv = v.squaredNorm();
    const double uu = u.squaredNorm();
    if (vv == 0.0)
        return uu;
    return std::max(0.0, uu - std::norm(v.dot(u)) / vv);
}

ThresholdSpec psa_threshold(int M, double sigma_z2, double eta)
{
    require(M >= 1 && sigma_z2 > 0.0, ErrorCode::InvalidArgument, "need M >= 1 and sigma_z2 > 0");
    require(eta > 0.0 && eta < 1.0, ErrorCode::InvalidArgument, "eta must lie in (0, 1)");
    return ThresholdSpec{eta, 2.0 * sigma_z2 * gamma_q_inv(M, eta)};
}

ThresholdSpec pja_threshold(int M, double sigma_z2, double eta)
{
    require(M >= 1 && sigma_z2 > 0.0, ErrorCode::InvalidArgument, "need M >= 1 and sigma_z2 > 0");
    require(eta > 0.0 && eta < 1.0, ErrorCode::InvalidArgument, "eta must lie in (0, 1)");
    const auto f = [&](double eps) { return pf_pja_bound(eps, M, sigma_z2).value - eta; };

    double lo = sigma_z2 * 1e-6;
    double hi = sigma_z2 * M;
    int guard = 0;
    while (f(lo) < 0.0) {
        lo *= 0.5;
        if (++guard > 200)
            fail(ErrorCode::BracketFailure, "cannot bracket the jamming threshold from below");
    }
    guard = 0;
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (++guard > 200)
            fail(ErrorCode::BracketFailure, "cannot bracket the jamming threshold from above");
    }
    require(f(lo) >= f(hi), ErrorCode::BracketFailure, "false-split bound not decreasing on the bracket");

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 300; ++iter) {
        mid = 0.5 * (lo + hi);
        const double v = f(mid);
        if (v > 0.0)
            lo = mid;
        else
            hi = mid;
        if (std::abs(v) <= 1e-13 || hi - lo <= 1e-15 * hi)
            break;
    }
    return ThresholdSpec{eta, mid};
}

DetectionOutcome identify_lu_psa(std::span<const CVec> ys, double epsilon)
{
    check_observations(ys);
    const int Q = static_cast<int>(ys.size());
    std::vector<double> d(Q);  // d[n] couples positions n and n + 1 (cyclic)
    for (int n = 0; n < Q; ++n)
        d[n] = min_phase_distance(ys[n], ys[(n + 1) % Q]);

    DetectionOutcome out;
    int found = -1;
    int count = 0;
    for (int n = 0; n < Q; ++n)
        if (d[n] > epsilon && d[(n + Q - 1) % Q] > epsilon) {
            found = n;
            ++count;
        }
    if (count == 1) {
        out.lu_index = found;
        return out;
    }
    return fallback_argmax(ys, min_phase_distance, out);
}

DetectionOutcome identify_lu_pja(std::span<const CVec> ys, double epsilon)
{
    check_observations(ys);
    const int Q = static_cast<int>(ys.size());
    DetectionOutcome out;
    out.inferred_state = InferredState::Pja;
    int found = -1;
    int count = 0;
    for (int n = 0; n < Q; ++n) {
        const double plus = min_scale_distance(ys[n], ys[(n + 1) % Q]);
        const double minus = min_scale_distance(ys[n], ys[(n + Q - 1) % Q]);
        if (plus >= epsilon && minus >= epsilon) {
            found = n;
            ++count;
        }
    }
    if (count == 1) {
        out.lu_index = found;
        return out;
    }
    return fallback_argmax(ys, min_scale_distance, out);
}

// ---- attack presence and unknown K -----------------------------------------

PresenceDetector::PresenceDetector(const CMat& R_L, const CMat& R_E, const TrainingParams& params, int K)
{
    const CMat none = lu_observation_cov(R_L, params);
    const CMat hit = spoofed_lu_observation_cov(R_L, R_E, params, K);
    diff_ = loaded_inverse(hit) - loaded_inverse(none);
    logdet_gap_ = log_det_pd(hit) - log_det_pd(none);
}

double PresenceDetector::statistic(const CVec& y) const
{
    require(y.size() == diff_.rows(), ErrorCode::DimMismatch, "observation dimension mismatch");
    return logdet_gap_ + quad(y, diff_);
}

bool PresenceDetector::no_attack(const CVec& y) const { return statistic(y) >= 0.0; }

PresenceDecision detect_spoof_presence(const CVec& y, const CMat& R_L, const CMat& R_E,
                                       const TrainingParams& params, int K)
{
    return PresenceDetector(R_L, R_E, params, K).no_attack(y) ? PresenceDecision::NoAttack
                                                             : PresenceDecision::Hit;
}

PsaResolver::PsaResolver(const CMat& R_L, const CMat& R_E, const TrainingParams& params, double epsilon,
                         int max_K)
    : R_L_(R_L), R_E_(R_E), params_(params), epsilon_(epsilon), llr_(R_L, R_E, params),
      gllr_(R_L, R_E, params, 2)
{
    for (int K = 1; K <= std::max(1, max_K); ++K)
        presence_.emplace_back(R_L, R_E, params, K);
}

bool PsaResolver::presence_no_attack(const CVec& y, int K) const
{
    if (K >= 1 && K <= static_cast<int>(presence_.size()))
        return presence_[K - 1].no_attack(y);
    return PresenceDetector(R_L_, R_E_, params_, K).no_attack(y);
}

DetectionOutcome PsaResolver::resolve(std::span<const CVec> ys) const
{
    DetectionOutcome out;
    const int Q = static_cast<int>(ys.size());
    if (Q == 0) {
        out.flags.empty_effective_set = true;
        return out;
    }
    if (Q == 1) {
        out.lu_index = 0;
        if (presence_no_attack(ys[0], 1)) {
            out.inferred_state = InferredState::NoAttack;
            out.inferred_K = 0;
        } else {
            out.inferred_state = InferredState::PsaHit;
            out.inferred_K = 1;
        }
        return out;
    }
    if (Q == 2) {
        const int j1 = llr_.decide(ys[0], ys[1]) == Hypothesis::H0 ? 0 : 1;
        const int j2 = gllr_.decide(ys[0], ys[1]) == Hypothesis::H0 ? 0 : 1;
        const double miss = llr_.log_density(ys[j1], ys[1 - j1]);
        const double hit = gllr_.max_log_density(ys[j2], ys[1 - j2]);
        if (hit - miss >= 0.0) {
            out.lu_index = j2;
            out.inferred_state = InferredState::PsaHit;
            out.inferred_K = 2;
        } else {
            out.lu_index = j1;
            out.inferred_state = InferredState::PsaMiss;
            out.inferred_K = 1;
        }
        return out;
    }
    out = identify_lu_psa(ys, epsilon_);
    if (presence_no_attack(ys[*out.lu_index], Q)) {
        out.inferred_state = InferredState::PsaMiss;
        out.inferred_K = Q - 1;
    } else {
        out.inferred_state = InferredState::PsaHit;
        out.inferred_K = Q;
    }
    return out;
}

DetectionOutcome resolve_unknown_k(const ObservationSet& obs, const std::vector<int>& survivors, const CMat& R_L,
                                   const CMat& R_E, const TrainingParams& params, double epsilon)
{
    std::vector<CVec> ys;
    for (int n : survivors) {
        require(n >= 0 && n < obs.size(), ErrorCode::OutOfRange, "survivor index out of range");
        ys.push_back(obs.y[n]);
    }
    const PsaResolver resolver(R_L, R_E, params, epsilon, static_cast<int>(survivors.size()));
    DetectionOutcome out = resolver.resolve(ys);
    if (out.lu_index)
        out.lu_index = survivors[*out.lu_index];
    return out;
}

} // namespace rct
