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

#include <benchmark/benchmark.h>

#include <vector>

#include "rct/analysis.hpp"
#include "rct/beamforming.hpp"
#include "rct/channel.hpp"
#include "rct/detection.hpp"
#include "rct/harness.hpp"
#include "rct/quadform.hpp"

namespace {

using namespace rct;

CMat pas(double center_deg, int M)
{
    return covariance_from_pas(PowerAzimuthSpectrum::single(deg_to_rad(center_deg), deg_to_rad(30.0)), M).R;
}

TrainingParams training()
{
    TrainingParams p;
    p.tau = 5;
    p.p_L = dbm_to_watts(10.0);
    p.p_E = dbm_to_watts(10.0);
    p.sigma_t2 = 1e-3;
    return p;
}

void BM_QuadformTailMixed(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    std::vector<double> eig;
    for (int i = 0; i < n; ++i)
        eig.push_back((i % 2 == 0 ? 1.0 : -1.0) * (0.3 + 0.2 * i));
    const SpectrumDecomposition s = spectrum_from_eigenvalues(eig);
    for (auto _ : state)
        benchmark::DoNotOptimize(quadform_tail(s, 0.5, QuadformOptions{1e-10, 100000}).tail);
}
BENCHMARK(BM_QuadformTailMixed)->Arg(4)->Arg(16)->Arg(64);

void BM_Edr12Analytic(benchmark::State& state)
{
    const int M = static_cast<int>(state.range(0));
    const CMat R_L = pas(0.0, M);
    const CMat R_E = pas(10.0, M);
    const TrainingParams p = training();
    for (auto _ : state)
        benchmark::DoNotOptimize(edr12_analytic(R_L, R_E, p).value);
}
BENCHMARK(BM_Edr12Analytic)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_GllrStatistic(benchmark::State& state)
{
    const int M = static_cast<int>(state.range(0));
    const GllrDetector det(pas(0.0, M), pas(10.0, M), training(), 2);
    Rng rng(1);
    const CVec y1 = rng.cn_vector(M);
    const CVec y2 = rng.cn_vector(M);
    for (auto _ : state)
        benchmark::DoNotOptimize(det.statistic(y1, y2));
}
BENCHMARK(BM_GllrStatistic)->Arg(16)->Arg(64);

void BM_SbOptimal(benchmark::State& state)
{
    const int M = static_cast<int>(state.range(0));
    Rng rng(2);
    const ChannelEstimate L{rng.cn_vector(M), 0.1 * pas(0.0, M)};
    const ChannelEstimate E{rng.cn_vector(M), 0.1 * pas(10.0, M)};
    const DownlinkParams dl{10.0, 1e-2, 1e-2};
    for (auto _ : state)
        benchmark::DoNotOptimize(sb_optimal(L, E, dl).v);
}
BENCHMARK(BM_SbOptimal)->Arg(16)->Arg(64);

void BM_SecrecyPipelineTrial(benchmark::State& state)
{
    ExperimentConfig c;
    c.antennas = static_cast<int>(state.range(0));
    c.trials = 100;
    c.eve.paths = {PathSpec{2.0, 30.0}};
    for (auto _ : state)
        benchmark::DoNotOptimize(run_secrecy_point(c, 0.0).mean_rs);
    state.SetItemsProcessed(state.iterations() * c.trials);
}
BENCHMARK(BM_SecrecyPipelineTrial)->Arg(16)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
