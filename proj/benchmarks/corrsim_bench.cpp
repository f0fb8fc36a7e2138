// Copyright 2026 The corrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "benchmark/benchmark.h"

#include "corrsim/circuit.hpp"
#include "corrsim/correlated.hpp"
#include "corrsim/hybrid.hpp"
#include "corrsim/noise_exp.hpp"

using namespace corrsim;

static void BM_kron_power(benchmark::State &state) {
    ComplexMatrix h = hadamard().matrix();
    auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kron_power(h, n));
    }
}
BENCHMARK(BM_kron_power)->DenseRange(3, 7, 2);

static void BM_realize_recursive(benchmark::State &state) {
    Circuit c = recursive_encoder(static_cast<std::size_t>(state.range(0)), Decomposition::basic);
    for (auto _ : state) {
        benchmark::DoNotOptimize(realize(c));
    }
}
BENCHMARK(BM_realize_recursive)->DenseRange(1, 3);

static void BM_apply_density(benchmark::State &state) {
    auto k = static_cast<std::size_t>(state.range(0));
    Circuit c = recursive_encoder(k, Decomposition::basic);
    DensityMatrix rho = DensityMatrix::maximally_mixed(2 * k + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply(c, rho));
    }
}
BENCHMARK(BM_apply_density)->DenseRange(1, 3);

static void BM_apply_channel(benchmark::State &state) {
    auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    std::vector<ChannelAtom> support;
    for (int i = 0; i < 4; i++) {
        support.push_back({"w", haar_su2(rng), 0.25});
    }
    CorrelatedChannel ch = make_channel(n, std::move(support));
    DensityMatrix rho = DensityMatrix::maximally_mixed(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_channel(ch, rho));
    }
}
BENCHMARK(BM_apply_channel)->DenseRange(3, 7, 2);

static void BM_hybrid_matrix(benchmark::State &state) {
    auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hybrid_matrix(n));
    }
}
BENCHMARK(BM_hybrid_matrix)->DenseRange(4, 8, 2);

static void BM_run_named(benchmark::State &state) {
    const auto names = preset_names();
    ExperimentSpec spec = preset_experiment(names[static_cast<std::size_t>(state.range(0))]);
    spec.noise = synthetic_noise();
    state.SetLabel(spec.name);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_named(spec));
    }
}
BENCHMARK(BM_run_named)->DenseRange(0, 7);

static void BM_measure_shots(benchmark::State &state) {
    Rng rng(2);
    StateVector s = haar_state(5, rng);
    auto shots = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(measure_shots(s, {0, 1, 2, 3, 4}, shots, 7));
    }
}
BENCHMARK(BM_measure_shots)->Arg(8192)->Arg(65536);

BENCHMARK_MAIN();
