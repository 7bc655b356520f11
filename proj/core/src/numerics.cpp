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

#include "rct/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "rct/error.hpp"

namespace rct {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::InvalidDims: return "InvalidDims";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::DimTooSmall: return "DimTooSmall";
    case ErrorCode::TruncationFailure: return "TruncationFailure";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Io: return "IoError";
    }
    return "Error";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 seeded_engine(std::initializer_list<std::uint64_t> words)
{
    std::vector<std::uint32_t> material;
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (std::uint64_t w : words) {
        h = splitmix64(h ^ w);
        material.push_back(static_cast<std::uint32_t>(h));
        material.push_back(static_cast<std::uint32_t>(h >> 32));
    }
    std::seed_seq seq(material.begin(), material.end());
    return std::mt19937_64(seq);
}

} // namespace

Rng::Rng(std::uint64_t seed) : engine_(seeded_engine({seed})) {}

Rng Rng::substream(std::uint64_t seed, std::uint64_t index)
{
    Rng r;
    r.engine_ = seeded_engine({seed, index, 0x5bd1e995ULL});
    return r;
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t index, std::uint64_t sub)
{
    Rng r;
    r.engine_ = seeded_engine({seed, index, sub, 0x1b873593ULL});
    return r;
}

double Rng::uniform() { return uniform_(engine_); }

double Rng::normal() { return normal_(engine_); }

Complex Rng::cn(double variance)
{
    const double s = std::sqrt(0.5 * variance);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {s * re, s * im};
}

std::size_t Rng::index(std::size_t n)
{
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(engine_);
}

CVec Rng::cn_vector(Eigen::Index n, double variance)
{
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = cn(variance);
    return v;
}

bool is_hermitian(const CMat& H, double rel_tol)
{
    if (H.rows() != H.cols())
        return false;
    if (!H.allFinite())
        return false;
    const double scale = std::max(H.cwiseAbs().maxCoeff(), 1e-300);
    return (H - H.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

CMat hermitian_part(const CMat& H) { return 0.5 * (H + H.adjoint()); }

HermitianEig hermitian_eig(const CMat& H)
{
    require(H.rows() == H.cols() && H.rows() > 0, ErrorCode::InvalidDims, "square matrix required");
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(H));
    require(es.info() == Eigen::Success, ErrorCode::Singular, "eigendecomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

double spectral_scale(const RVec& values)
{
    return values.cwiseAbs().maxCoeff();
}

void check_psd(const RVec& values)
{
    const double scale = spectral_scale(values);
    if (values.minCoeff() < -1e-8 * scale)
        fail(ErrorCode::NotPSD, "min eigenvalue " + std::to_string(values.minCoeff()) +
                                    " below -1e-8 * max|eigenvalue|");
}

} // namespace

CMat hermitian_sqrt(const CMat& H)
{
    const auto eig = hermitian_eig(H);
    check_psd(eig.values);
    const RVec root = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
}

CMat hermitian_inv_sqrt(const CMat& H)
{
    const auto eig = hermitian_eig(H);
    check_psd(eig.values);
    const double top = eig.values.maxCoeff();
    require(top > 0.0, ErrorCode::Singular, "inverse square root of a zero matrix");
    const RVec inv = eig.values.cwiseMax(1e-12 * top).cwiseSqrt().cwiseInverse();
    return eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
}

namespace {

Eigen::LLT<CMat> loaded_cholesky(const CMat& K)
{
    require(K.rows() == K.cols() && K.rows() > 0, ErrorCode::InvalidDims, "square kernel required");
    const double trace = K.diagonal().real().sum();
    require(trace > 0.0 && std::isfinite(trace), ErrorCode::Singular, "kernel has non-positive trace");
    CMat loaded = hermitian_part(K);
    loaded.diagonal().array() += 1e-12 * trace / static_cast<double>(K.rows());
    Eigen::LLT<CMat> llt(loaded);
    require(llt.info() == Eigen::Success, ErrorCode::Singular, "kernel is not positive definite");
    return llt;
}

} // namespace

CMat solve_loaded(const CMat& K, const CMat& B)
{
    require(B.rows() == K.rows(), ErrorCode::DimMismatch, "solve_loaded dimensions");
    return loaded_cholesky(K).solve(B);
}

CVec solve_loaded(const CMat& K, const CVec& b)
{
    require(b.size() == K.rows(), ErrorCode::DimMismatch, "solve_loaded dimensions");
    return loaded_cholesky(K).solve(b);
}

double log_det_pd(const CMat& K)
{
    require(K.rows() == K.cols() && K.rows() > 0, ErrorCode::InvalidDims, "square matrix required");
    Eigen::LLT<CMat> llt(hermitian_part(K));
    require(llt.info() == Eigen::Success, ErrorCode::Singular, "log_det of a non-PD matrix");
    const auto d = llt.matrixLLT().diagonal().real();
    return 2.0 * d.array().log().sum();
}

CMat block_diag(const CMat& A, const CMat& B)
{
    CMat out = CMat::Zero(A.rows() + B.rows(), A.cols() + B.cols());
    out.topLeftCorner(A.rows(), A.cols()) = A;
    out.bottomRightCorner(B.rows(), B.cols()) = B;
    return out;
}

void normalize_phase(CVec& v)
{
    const double n = v.norm();
    if (n == 0.0)
        return;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > 1e-12 * n) {
            v *= std::conj(v(i)) / a;
            v(i) = Complex(a, 0.0);
            return;
        }
    }
}

CVec dominant_eigvec(const CMat& A)
{
    const auto eig = hermitian_eig(A);
    CVec u = eig.vectors.col(eig.vectors.cols() - 1);
    u.normalize();
    normalize_phase(u);
    return u;
}

CVec dominant_gen_eigvec(const CMat& A, const CMat& B)
{
    require(A.rows() == B.rows() && A.cols() == B.cols(), ErrorCode::DimMismatch,
            "generalized eigenproblem dimensions");
    const auto eig = hermitian_eig(B);
    const double top = eig.values.maxCoeff();
    require(top > 0.0, ErrorCode::Singular, "B is the zero matrix");
    require(eig.values.minCoeff() >= -1e-8 * top, ErrorCode::Singular, "B is indefinite");
    const RVec inv = eig.values.cwiseMax(1e-12 * top).cwiseSqrt().cwiseInverse();
    const CMat b_inv_sqrt = eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
    const CMat whitened = b_inv_sqrt * hermitian_part(A) * b_inv_sqrt;
    CVec u = b_inv_sqrt * dominant_eigvec(whitened);
    u.normalize();
    normalize_phase(u);
    return u;
}

CVec sample_cn(const CMat& R, Rng& rng)
{
    return ComplexGaussian(R)(rng);
}

ComplexGaussian::ComplexGaussian(const CMat& R) : root_(hermitian_sqrt(R)) {}

CVec ComplexGaussian::operator()(Rng& rng) const
{
    return root_ * rng.cn_vector(root_.cols());
}

double gamma_q(double a, double x)
{
    if (x <= 0.0)
        return 1.0;
    return boost::math::gamma_q(a, x);
}

double gamma_p(double a, double x)
{
    if (x <= 0.0)
        return 0.0;
    return boost::math::gamma_p(a, x);
}

double gamma_q_inv(double a, double q)
{
    require(q > 0.0 && q < 1.0, ErrorCode::OutOfRange, "gamma_q_inv needs 0 < q < 1");
    return boost::math::gamma_q_inv(a, q);
}

} // namespace rct
