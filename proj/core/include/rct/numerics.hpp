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

#ifndef RCT_NUMERICS_HPP
#define RCT_NUMERICS_HPP

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace rct {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;  // channel vectors, observations, beamformers
using CMat = Eigen::MatrixXcd;  // Hermitian covariances and general complex matrices
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Random stream handed explicitly to every stochastic routine.
//
// Streams are derived from a (seed, index...) tuple so that trial t of an
// experiment sees the same draws regardless of how trials are scheduled.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0);
    static Rng substream(std::uint64_t seed, std::uint64_t index);
    static Rng substream(std::uint64_t seed, std::uint64_t index, std::uint64_t sub);

    double uniform();                       // [0, 1)
    double normal();                        // N(0, 1)
    Complex cn(double variance = 1.0);      // CN(0, variance)
    double phase() { return 2.0 * kPi * uniform(); }
    std::size_t index(std::size_t n);       // uniform in [0, n)

    CVec cn_vector(Eigen::Index n, double variance = 1.0);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// ---- Hermitian primitives -------------------------------------------------

bool is_hermitian(const CMat& H, double rel_tol = 1e-10);
CMat hermitian_part(const CMat& H);

struct HermitianEig {
    RVec values;   // ascending
    CMat vectors;  // columns are orthonormal eigenvectors
};
HermitianEig hermitian_eig(const CMat& H);

// Principal square root of a PSD matrix. Eigenvalues in [-1e-8 * max|lambda|, 0)
// are clamped to zero; anything more negative raises NotPSD.
CMat hermitian_sqrt(const CMat& H);

// H^{-1/2} with eigenvalues floored at 1e-12 * lambda_max.
CMat hermitian_inv_sqrt(const CMat& H);

// K^{-1} B for a Hermitian PSD kernel, loaded with 1e-12 * trace(K) / dim on
// the diagonal. Raises Singular when the kernel is the zero matrix.
CMat solve_loaded(const CMat& K, const CMat& B);
CVec solve_loaded(const CMat& K, const CVec& b);

// log det of a Hermitian positive definite matrix.
double log_det_pd(const CMat& K);

CMat block_diag(const CMat& A, const CMat& B);

// Rotates v so that its first entry with |v_i| > 1e-12 * ||v|| is real positive.
void normalize_phase(CVec& v);

// Unit eigenvector of the largest eigenvalue of a Hermitian matrix.
CVec dominant_eigvec(const CMat& A);

// Unit u maximizing (u^H A u) / (u^H B u) for A PSD, B PD. Near-singular B is
// handled through B^{-1/2} with an eigenvalue floor of 1e-12 * lambda_max.
CVec dominant_gen_eigvec(const CMat& A, const CMat& B);

// ---- Gaussian sampling ------------------------------------------------------

// R^{1/2} g with g ~ CN(0, I).
CVec sample_cn(const CMat& R, Rng& rng);

// Caches R^{1/2} for repeated draws from the same covariance.
class ComplexGaussian {
public:
    explicit ComplexGaussian(const CMat& R);
    CVec operator()(Rng& rng) const;
    const CMat& root() const { return root_; }
    Eigen::Index dim() const { return root_.rows(); }

private:
    CMat root_;
};

// ---- special functions (regularized incomplete gamma) -----------------------

double gamma_q(double a, double x);      // Gamma(a, x) / Gamma(a)
double gamma_p(double a, double x);      // 1 - gamma_q
double gamma_q_inv(double a, double q);  // x with gamma_q(a, x) = q

} // namespace rct

#endif
