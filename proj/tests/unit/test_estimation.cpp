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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rct/estimation.hpp"
#include "rct/training.hpp"

using namespace rct;

namespace {

TrainingParams params(int tau, double p_L, double p_E, double sigma_t2)
{
    TrainingParams p;
    p.tau = tau;
    p.p_L = p_L;
    p.p_E = p_E;
    p.sigma_t2 = sigma_t2;
    return p;
}

double min_eig(const CMat& A) { return hermitian_eig(hermitian_part(A)).values.minCoeff(); }

void expect_valid_mse(const ChannelEstimate& e, const CMat& prior)
{
    EXPECT_GE(min_eig(e.mse), -1e-9);
    EXPECT_GE(min_eig(prior - e.mse), -1e-9);
}

struct Priors {
    int M = 4;
    CMat R_L;
    CMat R_E;
};

Priors random_setup(Rng& rng, int M = 4)
{
    Priors s;
    s.M = M;
    s.R_L = oracle::random_psd(M, rng, 0.05);
    s.R_E = oracle::random_psd(M, rng, 0.05);
    return s;
}

double relative_gap(double empirical, double expect) { return std::abs(empirical - expect) / expect; }

} // namespace

// ---- LU channel under PSA --------------------------------------------------

TEST(MmseHl, NoiselessMissRecoversObservation)
{
    Rng rng(1);
    const Priors s = random_setup(rng);
    const TrainingParams p = params(4, 1.0, 1.0, 1e-12);
    const CVec y = rng.cn_vector(s.M);
    const ChannelEstimate e = mmse_hl_psa(y, false, 1, s.R_L, s.R_E, p);
    EXPECT_LE((e.hhat - y).norm(), 1e-6 * y.norm());
    EXPECT_LE(e.mse.norm(), 1e-6);
}

TEST(MmseHl, ZeroPriorGivesZeroEstimate)
{
    Rng rng(2);
    const Priors s = random_setup(rng);
    const ChannelEstimate e = mmse_hl_psa(rng.cn_vector(s.M), true, 2, CMat::Zero(s.M, s.M), s.R_E, params(4, 1, 1, 0.1));
    EXPECT_EQ(e.hhat.norm(), 0.0);
    EXPECT_EQ(e.mse.norm(), 0.0);
}

TEST(MmseHl, MissIgnoresEveCovarianceAndIsLinear)
{
    Rng rng(3);
    const Priors s = random_setup(rng);
    const TrainingParams p = params(4, 1.0, 2.0, 0.1);
    const CVec y = rng.cn_vector(s.M);
    const ChannelEstimate a = mmse_hl_psa(y, false, 1, s.R_L, s.R_E, p);
    const ChannelEstimate b = mmse_hl_psa(y, false, 1, s.R_L, oracle::random_psd(s.M, rng), p);
    EXPECT_LE((a.hhat - b.hhat).norm(), 1e-12);
    EXPECT_LE((a.mse - b.mse).norm(), 1e-12);
    const Complex alpha(0.3, -1.7);
    for (bool hit : {false, true}) {
        const ChannelEstimate e1 = mmse_hl_psa(y, hit, 2, s.R_L, s.R_E, p);
        const ChannelEstimate e2 = mmse_hl_psa(CVec(alpha * y), hit, 2, s.R_L, s.R_E, p);
        EXPECT_LE((e2.hhat - alpha * e1.hhat).norm(), 1e-12 * (1 + e1.hhat.norm()));
        expect_valid_mse(e1, s.R_L);
    }
}

TEST(MmseHl, EmpiricalMseMatchesTrace)
{
    Rng rng(4);
    const Priors s = random_setup(rng);
    const TrainingParams p = params(5, 1.0, 1.5, 0.5);
    const double s2 = p.sigma_z2();
    for (int K : {1, 3}) {
        for (bool hit : {false, true}) {
            const double b = p.beta_psa(K);
            const int n = 10000;
            double err = 0.0;
            double trace = 0.0;
            for (int i = 0; i < n; ++i) {
                const CVec h_L = sample_cn(s.R_L, rng);
                CVec y = h_L + rng.cn_vector(s.M, s2);
                if (hit)
                    y += std::polar(b, rng.phase()) * sample_cn(s.R_E, rng);
                const ChannelEstimate e = mmse_hl_psa(y, hit, K, s.R_L, s.R_E, p);
                err += (h_L - e.hhat).squaredNorm();
                trace = e.mse.trace().real();
            }
            EXPECT_LE(relative_gap(err / n, trace), 0.03) << K << " " << hit;
        }
    }
}

// ---- Eve channel under PSA -------------------------------------------------

TEST(MmseHeSingle, NoEveEnergy)
{
    Rng rng(5);
    const Priors s = random_setup(rng);
    const ChannelEstimate e = mmse_he_psa_single(rng.cn_vector(s.M), s.R_L, s.R_E, params(4, 1.0, 0.0, 0.1));
    EXPECT_EQ(e.hhat.norm(), 0.0);
    EXPECT_LE((e.mse - s.R_E).norm(), 1e-15);
}

TEST(MmseHeSingle, CleanObservationRecoversRotatedChannel)
{
    Rng rng(6);
    const Priors s = random_setup(rng);
    const TrainingParams p = params(4, 1.0, 4.0, 1e-12);
    const CVec h_E = sample_cn(s.R_E, rng);
    const Complex rot = std::polar(1.0, 0.9);
    const CVec y = p.beta_psa(1) * rot * h_E;
    const ChannelEstimate e = mmse_he_psa_single(y, CMat::Zero(s.M, s.M), s.R_E, p);
    EXPECT_LE((e.hhat - rot * h_E).norm(), 1e-6 * h_E.norm());
}

TEST(MmseHeSingle, EmpiricalMseMatchesTrace)
{
    Rng rng(7);
    const Priors s = random_setup(rng);
    const TrainingParams p = params(5, 1.0, 3.0, 0.5);
    const double b = p.beta_psa(1);
    const int n = 10000;
    double err = 0.0;
    double trace = 0.0;
    for (int i = 0; i < n; ++i) {
        const Complex rot = std::polar(1.0, rng.phase());
        const CVec h_E = sample_cn(s.R_E, rng);
        const CVec y = sample_cn(s.R_L, rng) + b * rot * h_E + rng.cn_vector(s.M, p.sigma_z2());
        const ChannelEstimate e = mmse_he_psa_single(y, s.R_L, s.R_E, p);
        err += (rot * h_E - e.hhat).squaredNorm();
        trace = e.mse.trace().real();
        if (i == 0)
            expect_valid_mse(e, s.R_E);
    }
    EXPECT_LE(relative_gap(err / n, trace), 0.03);
}

TEST(CombineEve, SingleAndNoiseFree)
{
    Rng rng(8);
    const CVec y = rng.cn_vector(5);
    EXPECT_EQ((combine_eve_obs({y}) - y).norm(), 0.0);
    const CVec h = rng.cn_vector(5);
    std::vector<CVec> ys;
    const double w1 = rng.phase();
    ys.push_back(std::polar(0.5, w1) * h);
    for (int i = 0; i < 4; ++i)
        ys.push_back(std::polar(0.5, rng.phase()) * h);
    EXPECT_LE((combine_eve_obs(ys) - std::polar(0.5, w1) * h).norm(), 1e-12);
}

TEST(CombineEve, OrthogonalObservationKeepsUnitWeight)
{
    CVec a = CVec::Zero(2), b = CVec::Zero(2);
    a(0) = 1.0;
    b(1) = 1.0;
    const CVec c = combine_eve_obs({a, b});
    EXPECT_NEAR(std::abs(c(0) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c(1) - 0.5), 0.0, 1e-15);
}

TEST(CombineEve, ResidualNoiseShrinksWithCount)
{
    // Aligning to the noisy first observation leaves a residual of order
    // s2 (Q - 1) / (2 M) beside s2 / Q, so the array must be large.
    Rng rng(9);
    const int M = 64;
    const double s2 = 0.01;
    for (int Q : {2, 4}) {
        const int n = 3000;
        double resid = 0.0;
        for (int i = 0; i < n; ++i) {
            const CVec h = 3.0 * rng.cn_vector(M);
            std::vector<CVec> ys;
            const double w1 = rng.phase();
            ys.push_back(std::polar(1.0, w1) * h + rng.cn_vector(M, s2));
            for (int k = 1; k < Q; ++k)
                ys.push_back(std::polar(1.0, rng.phase()) * h + rng.cn_vector(M, s2));
            resid += (combine_eve_obs(ys) - std::polar(1.0, w1) * h).squaredNorm() / M;
        }
        EXPECT_LE(relative_gap(resid / n, s2 / Q), 0.1) << Q;
    }
}

TEST(MmseHeMulti, LimitsAndEmpiricalMse)
{
    Rng rng(10);
    const Priors s = random_setup(rng, 32);
    const int K = 3;
    const int Q = 3;
    {
        const TrainingParams p = params(8, 1.0, 2.0, 1e-12);
        const CVec y = rng.cn_vector(s.M);
        const ChannelEstimate e = mmse_he_psa_multi(y, Q, K, s.R_E, p);
        EXPECT_LE((e.hhat - y / p.beta_psa(K)).norm(), 1e-6 * y.norm());
    }
    {
        const ChannelEstimate e = mmse_he_psa_multi(rng.cn_vector(s.M), Q, K, s.R_E, params(8, 1.0, 1e-14, 0.1));
        EXPECT_LE((e.mse - s.R_E).norm(), 1e-6);
    }
    // High pilot power: the kappa alignment is nearly exact.
    const TrainingParams p = params(8, 1.0, 2.0, 0.2);
    const double b = p.beta_psa(K);
    const int n = 10000;
    double err = 0.0;
    double trace = 0.0;
    for (int i = 0; i < n; ++i) {
        const CVec h_E = sample_cn(s.R_E, rng);
        std::vector<CVec> ys;
        const double w1 = rng.phase();
        for (int k = 0; k < Q; ++k)
            ys.push_back(std::polar(b, k == 0 ? w1 : rng.phase()) * h_E + rng.cn_vector(s.M, p.sigma_z2()));
        const ChannelEstimate e = mmse_he_psa_multi(combine_eve_obs(ys), Q, K, s.R_E, p);
        err += (std::polar(1.0, w1) * h_E - e.hhat).squaredNorm();
        trace = e.mse.trace().real();
        if (i == 0)
            expect_valid_mse(e, s.R_E);
    }
    EXPECT_LE(relative_gap(err / n, trace), 0.05);
}

// ---- PJA ------------------------------------------------------------------

TEST(LmmsePja, ReductionsAndLimits)
{
    Rng rng(11);
    const Priors s = random_setup(rng);
    const CVec y = rng.cn_vector(s.M);
    const TrainingParams quiet = params(5, 1.0, 0.0, 0.3);
    const ChannelEstimate a = lmmse_hl_pja(y, s.R_L, s.R_E, quiet);
    const ChannelEstimate b = mmse_no_attack(y, s.R_L, quiet);
    EXPECT_LE((a.hhat - b.hhat).norm(), 1e-12);
    const ChannelEstimate c = lmmse_hl_pja(y, s.R_L, s.R_E, params(5, 1.0, 1e-14, 1e-14));
    EXPECT_LE((c.hhat - y).norm(), 1e-5 * y.norm());
}

TEST(LmmsePja, EmpiricalMseMatchesTrace)
{
    Rng rng(12);
    const Priors s = random_setup(rng);
    const TrainingParams p = params(5, 1.0, 4.0, 0.5);
    const double b = p.beta_pja();
    const int n = 10000;
    double err = 0.0;
    double trace = 0.0;
    for (int i = 0; i < n; ++i) {
        const CVec h_L = sample_cn(s.R_L, rng);
        const Complex mu = rng.cn(1.0 / p.tau);
        const CVec y = h_L + b * mu * sample_cn(s.R_E, rng) + rng.cn_vector(s.M, p.sigma_z2());
        const ChannelEstimate e = lmmse_hl_pja(y, s.R_L, s.R_E, p);
        err += (h_L - e.hhat).squaredNorm();
        trace = e.mse.trace().real();
        if (i == 0)
            expect_valid_mse(e, s.R_L);
    }
    EXPECT_GE(err / n, trace * 0.95);
    EXPECT_LE(relative_gap(err / n, trace), 0.10);
}

TEST(EveDirection, NoiseFreeSingleColumnAndDegenerate)
{
    Rng rng(13);
    const CVec h = rng.cn_vector(6);
    CMat Y(6, 4);
    for (int i = 0; i < 4; ++i)
        Y.col(i) = rng.cn(1.0) * h;
    const ChannelEstimate e = eve_direction_pja(Y);
    EXPECT_EQ(e.kind, EstimateKind::DirectionOnly);
    EXPECT_NEAR(e.hhat.norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(e.hhat.dot(h)) / h.norm(), 1.0, 1e-12);
    const CVec y = rng.cn_vector(6);
    EXPECT_NEAR(std::abs(eve_direction_pja(CMat(y)).hhat.dot(y)) / y.norm(), 1.0, 1e-12);
    const ChannelEstimate z = eve_direction_pja(CMat::Zero(3, 2));
    EXPECT_TRUE(z.degenerate);
    EXPECT_EQ((z.hhat - CVec::Unit(3, 0)).norm(), 0.0);
}

TEST(EveDirection, InvariantToColumnScaling)
{
    Rng rng(14);
    // Every column lies on one line, so scaling columns keeps the span.
    const CVec h = rng.cn_vector(5);
    CMat A(5, 3), B(5, 3);
    for (int i = 0; i < 3; ++i) {
        A.col(i) = rng.cn(1.0) * h;
        B.col(i) = A.col(i) * std::polar(1.0 + i, rng.phase());
    }
    const CVec a = eve_direction_pja(A).hhat;
    const CVec b = eve_direction_pja(B).hhat;
    EXPECT_NEAR(std::abs(a.dot(b)), 1.0, 1e-12);
    EXPECT_LE((a * a.adjoint() - b * b.adjoint()).norm(), 1e-10);
}

TEST(EveDirection, AlignmentImprovesWithJammingPower)
{
    Rng rng(15);
    const int M = 16;
    const double s2 = 0.01;
    double prev = 0.0;
    for (double gain : {0.05, 0.2, 1.0, 5.0}) {
        double align = 0.0;
        const int n = 300;
        for (int i = 0; i < n; ++i) {
            const CVec h = rng.cn_vector(M) / std::sqrt(double(M));
            CMat Y(M, 4);
            for (int k = 0; k < 4; ++k)
                Y.col(k) = gain * rng.cn(1.0) * h + rng.cn_vector(M, s2);
            align += std::abs(eve_direction_pja(Y).hhat.dot(h)) / h.norm();
        }
        align /= n;
        EXPECT_GT(align, prev);
        prev = align;
    }
    EXPECT_GT(prev, 0.99);
}

TEST(Estimates, OuterProductIsPhaseInvariant)
{
    Rng rng(16);
    const Priors s = random_setup(rng);
    const TrainingParams p = params(4, 1.0, 2.0, 0.2);
    const CVec y = rng.cn_vector(s.M);
    const Complex rot = std::polar(1.0, 2.2);
    const ChannelEstimate a = mmse_he_psa_single(y, s.R_L, s.R_E, p);
    const ChannelEstimate b = mmse_he_psa_single(CVec(rot * y), s.R_L, s.R_E, p);
    EXPECT_LE((a.hhat * a.hhat.adjoint() - b.hhat * b.hhat.adjoint()).norm(), 1e-12);
    EXPECT_LE((a.mse - b.mse).norm(), 1e-12);
}
