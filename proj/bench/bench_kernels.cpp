// SPDX-License-Identifier: Apache-2.0
//
// ccmlab: parametric channel covariance estimation for mmWave massive MIMO
// Copyright (C) 2026 The ccmlab authors
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


// Grid-scan kernels: OpenMP versions against the serial references, at the
// sizes the estimators use (N = 128, per-sector and full-range grids).

#include "ccmlab/estimators.hpp"
#include "ccmlab/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace ccmlab;

namespace {

CMatrix snapshots(int n, int count)
{
    Rng rng(1);
    CMatrix x(n, count);
    for (auto &v : x.reshaped())
        v = complex_normal(rng);
    return x;
}

CMatrix signal_basis(int n, int m)
{
    const Eigen::HouseholderQR<CMatrix> qr(snapshots(n, m));
    return qr.householderQ() * CMatrix::Identity(n, m);
}

// range(0): grid size, range(1): snapshot count
void BM_GridPower(benchmark::State &state)
{
    const AngleGrid g = make_grid(-45.0, -45.0 + 0.05 * (state.range(0) - 1), 0.05, 128);
    const CMatrix x = snapshots(128, static_cast<int>(state.range(1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::grid_power(g.steering, x));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void BM_GridPowerSerial(benchmark::State &state)
{
    const AngleGrid g = make_grid(-45.0, -45.0 + 0.05 * (state.range(0) - 1), 0.05, 128);
    const CMatrix x = snapshots(128, static_cast<int>(state.range(1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::grid_power_serial(g.steering, x));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void BM_SubspaceResidual(benchmark::State &state)
{
    const AngleGrid g = make_grid(-45.0, -45.0 + 0.05 * (state.range(0) - 1), 0.05, 128);
    const CMatrix v = signal_basis(128, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::subspace_residual(g.steering, v));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SubspaceResidualSerial(benchmark::State &state)
{
    const AngleGrid g = make_grid(-45.0, -45.0 + 0.05 * (state.range(0) - 1), 0.05, 128);
    const CMatrix v = signal_basis(128, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::subspace_residual_serial(g.steering, v));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_GridPower)->Args({226, 10})->Args({1801, 10});
BENCHMARK(BM_GridPowerSerial)->Args({226, 10})->Args({1801, 10});
BENCHMARK(BM_SubspaceResidual)->Arg(226)->Arg(1801);
BENCHMARK(BM_SubspaceResidualSerial)->Arg(226)->Arg(1801);

BENCHMARK_MAIN();
