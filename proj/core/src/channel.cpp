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

#include "rct/channel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "rct/error.hpp"

namespace rct {

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

CVec steering_vector(double theta, int antennas)
{
    require(antennas > 0, ErrorCode::InvalidDims, "antenna count must be positive");
    require(theta >= -kPi / 2.0 - 1e-12 && theta <= kPi / 2.0 + 1e-12, ErrorCode::OutOfRange,
            "steering angle outside [-pi/2, pi/2]");
    const double s = std::sin(theta);
    CVec a(antennas);
    for (int m = 0; m < antennas; ++m)
        a(m) = std::polar(1.0, -kPi * m * s);
    return a;
}

namespace {

GaussLegendreRule build_rule(int n)
{
    GaussLegendreRule rule{RVec(n), RVec(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // refresh derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes(i) = -x;
        rule.nodes(n - 1 - i) = x;
        rule.weights(i) = w;
        rule.weights(n - 1 - i) = w;
    }
    if (n % 2 == 1)
        rule.nodes(n / 2) = 0.0;
    return rule;
}

std::vector<std::pair<double, double>> merged_support(const PowerAzimuthSpectrum& pas)
{
    std::vector<std::pair<double, double>> iv;
    for (const auto& p : pas.paths) {
        require(p.spread >= 0.0 && std::isfinite(p.spread) && std::isfinite(p.center),
                ErrorCode::InvalidArgument, "path spread must be finite and non-negative");
        const double lo = std::max(p.center - p.spread / 2.0, -kPi / 2.0);
        const double hi = std::min(p.center + p.spread / 2.0, kPi / 2.0);
        if (hi > lo)
            iv.emplace_back(lo, hi);
    }
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& [lo, hi] : iv) {
        if (!merged.empty() && lo <= merged.back().second)
            merged.back().second = std::max(merged.back().second, hi);
        else
            merged.emplace_back(lo, hi);
    }
    return merged;
}

CMat toeplitz_from_lags(const CVec& lags)
{
    const Eigen::Index M = lags.size();
    CMat R(M, M);
    for (Eigen::Index m = 0; m < M; ++m)
        for (Eigen::Index n = 0; n < M; ++n)
            R(m, n) = m >= n ? lags(m - n) : std::conj(lags(n - m));
    return R;
}

} // namespace

const GaussLegendreRule& gauss_legendre(int order)
{
    require(order > 0, ErrorCode::InvalidArgument, "quadrature order must be positive");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[order];
    if (!slot)
        slot = std::make_unique<GaussLegendreRule>(build_rule(order));
    return *slot;
}

CovarianceModel covariance_from_pas(const PowerAzimuthSpectrum& pas, int antennas, int quadrature_order)
{
    require(antennas > 0, ErrorCode::InvalidDims, "antenna count must be positive");
    require(!pas.paths.empty(), ErrorCode::InvalidArgument, "power azimuth spectrum has no paths");

    const auto support = merged_support(pas);
    double total = 0.0;
    for (const auto& [lo, hi] : support)
        total += hi - lo;

    CovarianceModel model{antennas, CMat::Zero(antennas, antennas), pas};
    if (total <= 0.0) {
        // spread -> 0 limit: equal-weight rank-one terms at the path centers
        for (const auto& p : pas.paths) {
            const double c = std::clamp(p.center, -kPi / 2.0, kPi / 2.0);
            const CVec a = steering_vector(c, antennas);
            model.R += a.conjugate() * a.transpose();
        }
        model.R /= static_cast<double>(pas.paths.size());
        return model;
    }

    const auto& rule = gauss_legendre(quadrature_order);
    const double xi = 1.0 / total;
    // lag k entry of R is \int P(theta) exp(j pi k sin(theta)) dtheta
    CVec lags = CVec::Zero(antennas);
    for (const auto& [lo, hi] : support) {
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
            const double theta = mid + half * rule.nodes(q);
            const double w = xi * half * rule.weights(q);
            const Complex step = std::polar(1.0, kPi * std::sin(theta));
            Complex term(w, 0.0);
            for (int k = 0; k < antennas; ++k) {
                lags(k) += term;
                term *= step;
            }
        }
    }
    model.R = toeplitz_from_lags(lags);
    return model;
}

CovarianceModel identity_covariance(int antennas)
{
    require(antennas > 0, ErrorCode::InvalidDims, "antenna count must be positive");
    return CovarianceModel{antennas, CMat::Identity(antennas, antennas), std::nullopt};
}

} // namespace rct
