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

#include "oracles.hpp"
#include "rct/error.hpp"
#include "rct/numerics.hpp"

using namespace rct;

TEST(HermitianSqrt, IdentityAndDiagonal)
{
    EXPECT_LE((hermitian_sqrt(CMat::Identity(3, 3)) - CMat::Identity(3, 3)).norm(), 1e-14);
    CMat D = CMat::Zero(2, 2);
    D(0, 0) = 4.0;
    D(1, 1) = 9.0;
    const CMat S = hermitian_sqrt(D);
    EXPECT_NEAR(S(0, 0).real(), 2.0, 1e-14);
    EXPECT_NEAR(S(1, 1).real(), 3.0, 1e-14);
    EXPECT_NEAR(std::abs(S(0, 1)), 0.0, 1e-14);
}

TEST(HermitianSqrt, ReconstructsRandomPsdAndCommutes)
{
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const CMat H = oracle::random_psd(1 + trial % 8, rng);
        const CMat S = hermitian_sqrt(H);
        EXPECT_TRUE(is_hermitian(S));
        EXPECT_LE((S * S - H).norm(), 1e-10 * H.norm());
        EXPECT_LE((S * H - H * S).norm(), 1e-9 * H.norm());
    }
}

TEST(HermitianSqrt, RejectsIndefinite)
{
    CMat H = CMat::Identity(2, 2);
    H(1, 1) = -1.0;
    try {
        hermitian_sqrt(H);
        FAIL() << "expected NotPSD";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPSD);
    }
}

TEST(HermitianSqrt, ClampsTinyNegativeEigenvalues)
{
    CMat H = CMat::Identity(2, 2);
    H(1, 1) = -1e-12;
    const CMat S = hermitian_sqrt(H);
    EXPECT_NEAR(std::abs(S(1, 1)), 0.0, 1e-14);
}

TEST(SampleCn, DegenerateCovariances)
{
    Rng rng(1);
    EXPECT_EQ(sample_cn(CMat::Zero(3, 3), rng).norm(), 0.0);
    CMat R = CMat::Zero(2, 2);
    R(0, 0) = 4.0;
    for (int i = 0; i < 10; ++i)
        EXPECT_EQ(sample_cn(R, rng)(1), Complex(0.0, 0.0));
}

TEST(SampleCn, EmpiricalCovarianceOfIdentity)
{
    Rng rng(2);
    CMat acc = CMat::Zero(2, 2);
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const CVec x = sample_cn(CMat::Identity(2, 2), rng);
        acc += x * x.adjoint();
    }
    acc /= n;
    EXPECT_LE((acc - CMat::Identity(2, 2)).norm(), 0.05);
}

TEST(SampleCn, BitReproducibleForFixedSeed)
{
    Rng rng_1(99);
    Rng rng_2(99);
    Rng init(5);
    const CMat R = oracle::random_psd(4, init);
    for (int i = 0; i < 5; ++i)
        EXPECT_EQ(sample_cn(R, rng_1), sample_cn(R, rng_2));
}

TEST(SampleCn, SubstreamsDependOnIndexOnly)
{
    Rng a = Rng::substream(11, 3);
    Rng b = Rng::substream(11, 3);
    Rng c = Rng::substream(11, 4);
    const double xa = a.normal();
    EXPECT_EQ(xa, b.normal());
    EXPECT_NE(xa, c.normal());
}

TEST(DominantGenEigvec, DiagonalCases)
{
    CMat A = CMat::Zero(2, 2);
    A(0, 0) = 3.0;
    A(1, 1) = 1.0;
    CVec u = dominant_gen_eigvec(A, CMat::Identity(2, 2));
    EXPECT_NEAR(std::abs(u(0)), 1.0, 1e-12);
    EXPECT_NEAR(u(0).imag(), 0.0, 1e-12);
    EXPECT_GT(u(0).real(), 0.0);

    A(1, 1) = 8.0;
    CMat B = CMat::Identity(2, 2);
    B(1, 1) = 4.0;
    u = dominant_gen_eigvec(A, B);
    EXPECT_NEAR(std::abs(u(0)), 1.0, 1e-12);
}

TEST(DominantGenEigvec, BeatsRandomSearch)
{
    Rng rng(3);
    for (int inst = 0; inst < 10; ++inst) {
        const CMat A = oracle::random_psd(5, rng);
        const CMat B = oracle::random_psd(5, rng, 0.1);
        const CVec u = dominant_gen_eigvec(A, B);
        EXPECT_NEAR(u.norm(), 1.0, 1e-12);
        const auto q = [&](const CVec& v) { return v.dot(A * v).real() / v.dot(B * v).real(); };
        const double best = q(u);
        for (int i = 0; i < 10000; ++i)
            EXPECT_GE(best, q(oracle::random_unit(5, rng)) - 1e-9);
    }
}

TEST(DominantGenEigvec, IdentityDenominatorGivesTopEigenvector)
{
    Rng rng(4);
    const CMat A = oracle::random_psd(6, rng);
    const CVec u = dominant_gen_eigvec(A, CMat::Identity(6, 6));
    const CVec top = dominant_eigvec(A);
    EXPECT_LE((u - top).norm(), 1e-8);
}

TEST(SolveLoaded, MatchesDirectInverseAndRejectsZero)
{
    Rng rng(5);
    const CMat K = oracle::random_psd(4, rng, 0.5);
    const CVec b = rng.cn_vector(4);
    EXPECT_LE((solve_loaded(K, b) - K.inverse() * b).norm(), 1e-9 * b.norm());
    try {
        solve_loaded(CMat::Zero(3, 3), CVec(CVec::Ones(3)));
        FAIL() << "expected Singular";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Singular);
    }
}

TEST(NormalizePhase, FirstNonzeroEntryRealPositive)
{
    CVec v(3);
    v << Complex(0, 0), Complex(0, -2), Complex(1, 1);
    normalize_phase(v);
    EXPECT_NEAR(v(1).imag(), 0.0, 1e-15);
    EXPECT_GT(v(1).real(), 0.0);
}

TEST(IncompleteGamma, InverseRoundTrip)
{
    for (double a : {1.0, 4.0, 32.0})
        for (double q : {1e-6, 1e-3, 0.5, 0.9}) {
            const double x = gamma_q_inv(a, q);
            EXPECT_NEAR(gamma_q(a, x), q, 1e-12);
            EXPECT_NEAR(gamma_p(a, x) + gamma_q(a, x), 1.0, 1e-14);
        }
}
