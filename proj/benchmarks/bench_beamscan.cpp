// beamscan - phased-array channel sounding simulator and tensor analysis tools
// Copyright (C) 2026 beamscan contributors
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

#include "beamscan/channel.hpp"
#include "beamscan/decompose.hpp"
#include "beamscan/rng.hpp"
#include "beamscan/segment.hpp"

#include <benchmark/benchmark.h>

using namespace beamscan;

namespace {

ChannelTensor random_tensor(Eigen::Index nd, Eigen::Index nj, Eigen::Index nk,
                            std::uint64_t seed) {
  SplitMix64 rng(seed);
  ChannelTensor t(nd, nj, nk);
  for (auto &v : t.data())
    v = rng.next_cgaussian(1.0);
  return t;
}

void BM_simulate_desk(benchmark::State &state) {
  Scenario sc = preset_scenario(1, false, 3);
  sc.n_scan = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate(sc));
}
BENCHMARK(BM_simulate_desk)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_power_matrix(benchmark::State &state) {
  const ChannelTensor t = random_tensor(64, 36, state.range(0), 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(power_matrix(t));
}
BENCHMARK(BM_power_matrix)->Arg(200)->Arg(1400)->Unit(benchmark::kMillisecond);

void BM_pca(benchmark::State &state) {
  const ChannelTensor t = random_tensor(32, 16, state.range(0), 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(pca(t, 3));
}
BENCHMARK(BM_pca)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_parafac(benchmark::State &state) {
  // Noisy low-rank tensor: representative ALS workload per size.
  Scenario sc = preset_scenario(1, false, 11);
  sc.n_scan = state.range(0);
  const SimulationResult sim = simulate(sc);
  AlsOptions opts;
  opts.max_iter = 20;
  opts.n_init = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(parafac(sim.tensor, 2, opts));
}
BENCHMARK(BM_parafac)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_segment(benchmark::State &state) {
  SplitMix64 rng(13);
  Eigen::VectorXcd g(state.range(0));
  for (Eigen::Index k = 0; k < g.size(); ++k)
    g(k) = rng.next_cgaussian(1.0) + cplx(3.0, 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(segment_blockage(g));
}
BENCHMARK(BM_segment)->Arg(1400)->Arg(5600)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
