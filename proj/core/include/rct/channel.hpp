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

#ifndef RCT_CHANNEL_HPP
#define RCT_CHANNEL_HPP

#include <optional>
#include <vector>

#include "rct/numerics.hpp"

namespace rct {

// One angular cluster of a uniform power azimuth spectrum (radians).
struct AngularPath {
    double center = 0.0;
    double spread = 0.0;
};

// P(theta) = xi * 1{theta in union of [center - spread/2, center + spread/2]},
// with xi normalizing the total mass to one. Intervals are clipped to
// [-pi/2, pi/2]; overlapping intervals count once.
struct PowerAzimuthSpectrum {
    std::vector<AngularPath> paths;

    static PowerAzimuthSpectrum single(double center, double spread)
    {
        return PowerAzimuthSpectrum{{AngularPath{center, spread}}};
    }
};

struct CovarianceModel {
    int antennas = 0;
    CMat R;
    std::optional<PowerAzimuthSpectrum> pas;
};

inline constexpr int kDefaultQuadratureOrder = 2048;

double deg_to_rad(double deg);

// ULA steering entries exp(-j pi m sin(theta)), half-wavelength spacing.
CVec steering_vector(double theta, int antennas);

// R = \int P(theta) a(theta)^H a(theta) dtheta with a the steering row vector,
// by Gauss-Legendre quadrature on each merged interval. If every path has zero
// spread the rank-one limit (equal-weight average over the path centers) is
// returned.
CovarianceModel covariance_from_pas(const PowerAzimuthSpectrum& pas, int antennas,
                                    int quadrature_order = kDefaultQuadratureOrder);

CovarianceModel identity_covariance(int antennas);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    RVec nodes;
    RVec weights;
};
const GaussLegendreRule& gauss_legendre(int order);

} // namespace rct

#endif
