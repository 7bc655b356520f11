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

#ifndef RCT_QUADFORM_HPP
#define RCT_QUADFORM_HPP

#include <span>
#include <vector>

#include "rct/numerics.hpp"

namespace rct {

struct EigenCluster {
    double value = 0.0;
    int multiplicity = 0;
};

// Signed distinct eigenvalues of a Hermitian form. Both lists are ordered by
// ascending magnitude, so positive.front() and negative.front() are the
// eigenvalues closest to zero on each side.
struct SpectrumDecomposition {
    std::vector<EigenCluster> positive;
    std::vector<EigenCluster> negative;
    int dropped_zero_count = 0;

    int positive_rank() const;
    int negative_rank() const;
};

inline constexpr double kDefaultClusterTol = 1e-8;

SpectrumDecomposition spectrum_decompose(const CMat& omega, double cluster_tol = kDefaultClusterTol);
SpectrumDecomposition spectrum_from_eigenvalues(std::vector<double> eigenvalues,
                                                double cluster_tol = kDefaultClusterTol);

// Mixture weights w_k of the gamma expansion of sum_i Gamma(m_i, |s_i|): the sum
// has density sum_k w_k Gamma(rho + k, s_min). Ascending k, w_0 first.
std::vector<double> gamma_mixture_weights(const std::vector<EigenCluster>& side, int terms);

struct QuadformOptions {
    double tol = 1e-10;   // truncation error target
    int max_terms = 500;  // per-side series length cap
};

struct TailResult {
    double tail = 0.0;   // P{x^H Omega x >= t}
    double lower = 0.0;  // P{x^H Omega x < t}, computed directly when cheaper
    double error_bound = 0.0;
    int terms_positive = 0;
    int terms_negative = 0;
    bool zero_spectrum = false;
};

// Tail of x^H Omega x for x ~ CN(0, I). Raises TruncationFailure if the error
// bound cannot be pushed below tol within max_terms terms per side.
TailResult quadform_tail(const SpectrumDecomposition& spectrum, double t, const QuadformOptions& opts = {});
TailResult quadform_tail(const CMat& omega, double t, const QuadformOptions& opts = {});

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

McEstimate quadform_tail_mc(const CMat& omega, double t, long long n_samples, Rng& rng);

// One set of samples shared by every threshold in ts.
std::vector<McEstimate> quadform_tail_mc(const CMat& omega, std::span<const double> ts, long long n_samples,
                                         Rng& rng);

} // namespace rct

#endif
