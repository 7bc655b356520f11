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

#include "rct/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rct/error.hpp"

namespace rct {

bool AttackRealization::hits(int lu_index) const
{
    return kind == AttackKind::PSA && std::binary_search(pilots.begin(), pilots.end(), lu_index);
}

AttackRealization no_attack(int tau)
{
    AttackRealization out;
    out.a = CVec::Zero(tau);
    return out;
}

std::vector<int> random_subset(int N, int K, Rng& rng)
{
    require(K >= 1 && K <= N, ErrorCode::InvalidK, "subset size must lie in [1, N]");
    std::vector<int> pool(N);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < K; ++i) {
        const auto j = i + static_cast<int>(rng.index(static_cast<std::size_t>(N - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(K);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<int> conditioned_subset(int N, int K, int index, bool hit, Rng& rng)
{
    require(index >= 0 && index < N, ErrorCode::OutOfRange, "index out of range");
    require(K >= 1 && K <= N, ErrorCode::InvalidK, "subset size must lie in [1, N]");
    require(hit || K <= N - 1, ErrorCode::InvalidK, "a miss needs K < N");
    std::vector<int> others;
    for (int n = 0; n < N; ++n)
        if (n != index)
            others.push_back(n);
    const int from_others = hit ? K - 1 : K;
    std::vector<int> out;
    if (from_others > 0)
        for (int pos : random_subset(N - 1, from_others, rng))
            out.push_back(others[pos]);
    if (hit)
        out.push_back(index);
    std::sort(out.begin(), out.end());
    return out;
}

AttackRealization psa_attack(const PilotSet& pilots, const AttackConfig& cfg, Rng& rng)
{
    require(cfg.K >= 1 && cfg.K <= pilots.count, ErrorCode::InvalidK, "PSA needs 1 <= K <= N");
    AttackRealization out;
    out.kind = AttackKind::PSA;
    if (cfg.fixed_subset.empty()) {
        out.pilots = random_subset(pilots.count, cfg.K, rng);
    } else {
        out.pilots = cfg.fixed_subset;
        std::sort(out.pilots.begin(), out.pilots.end());
        require(static_cast<int>(out.pilots.size()) == cfg.K, ErrorCode::InvalidK,
                "fixed subset size differs from K");
        require(std::adjacent_find(out.pilots.begin(), out.pilots.end()) == out.pilots.end(),
                ErrorCode::InvalidK, "fixed subset has repeated pilots");
        require(out.pilots.front() >= 0 && out.pilots.back() < pilots.count, ErrorCode::OutOfRange,
                "fixed subset index out of range");
    }
    const double weight = std::sqrt(1.0 / cfg.K);
    out.a = CVec::Zero(pilots.tau);
    for (int n : out.pilots) {
        const double w = cfg.zero_phases ? 0.0 : rng.phase();
        out.phases.push_back(w);
        out.a += std::polar(weight, w) * pilots.X.col(n);
    }
    return out;
}

AttackRealization pja_attack(const PilotSet& pilots, Rng& rng)
{
    AttackRealization out;
    out.kind = AttackKind::PJA;
    out.a = rng.cn_vector(pilots.tau, 1.0);
    out.jam = (pilots.X.adjoint() * out.a).conjugate() / static_cast<double>(pilots.tau);
    return out;
}

ObservationSet observe_training(const PilotSet& pilots, int lu_index, const CVec& h_L, const CVec& h_E,
                                const AttackRealization& attack, const TrainingParams& params, Rng& rng)
{
    TrainingParams effective = params;
    if (attack.kind == AttackKind::None)
        effective.p_E = 0.0;
    const CVec a = attack.a.size() == pilots.tau ? attack.a : CVec::Zero(pilots.tau);
    const CMat Y = synthesize_uplink(pilots, lu_index, h_L, h_E, a, effective, rng);
    ObservationSet obs = matched_filter(Y, pilots, effective);
    auto& truth = obs.truth;
    truth.lu_index = lu_index;
    truth.attack = attack.kind;
    truth.eve_pilots = attack.pilots;
    truth.phases = attack.phases;
    truth.jam = attack.jam;
    truth.hit = attack.hits(lu_index);
    truth.h_L = h_L;
    truth.h_E = h_E;
    return obs;
}

} // namespace rct
