// Copyright 2026 The eprb Authors
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


#include <benchmark/benchmark.h>

#include <sstream>

#include "eprb/eprb.hpp"

namespace {

using namespace eprb;

void BM_Philox(benchmark::State& state) {
  PhiloxCounter ctr{0, 0, 0, 0};
  for (auto _ : state) {
    ++ctr[0];
    benchmark::DoNotOptimize(philox4x32_10(ctr, {1, 2}));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Philox);

void BM_Uniform(benchmark::State& state) {
  RandomStream s(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.uniform());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Uniform);

template <class MakeModel>
void run_counts_bench(benchmark::State& state, MakeModel make, SettingPolicy policy) {
  const auto model = make();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_counts(model, policy, n, ++seed));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RunCountsMermin(benchmark::State& state) {
  run_counts_bench(state, [] { return MerminModel(); }, UniformLabelPairs{LabelBinding{}});
}
BENCHMARK(BM_RunCountsMermin)->Arg(100000);

void BM_RunCountsGrandmaLabeled(benchmark::State& state) {
  run_counts_bench(state, [] { return GrandmaModel(); }, UniformLabelPairs{LabelBinding{}});
}
BENCHMARK(BM_RunCountsGrandmaLabeled)->Arg(100000);

void BM_RunCountsGrandmaContinuous(benchmark::State& state) {
  run_counts_bench(state, [] { return GrandmaModel::continuous(); },
                   FixedPair{SettingPair::of_degrees(120, 0)});
}
BENCHMARK(BM_RunCountsGrandmaContinuous)->Arg(100000);

void BM_RunCountsQuantum(benchmark::State& state) {
  run_counts_bench(state, [] { return QuantumModel(); },
                   FixedPair{SettingPair::of_degrees(120, 0)});
}
BENCHMARK(BM_RunCountsQuantum)->Arg(100000);

void BM_RecordsToJsonl(benchmark::State& state) {
  const auto records =
      run_experiment(GrandmaModel(), UniformLabelPairs{LabelBinding{}}, 10000, 1);
  for (auto _ : state) {
    std::ostringstream os;
    write_records(os, records);
    benchmark::DoNotOptimize(os.str().size());
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_RecordsToJsonl);

}  // namespace

BENCHMARK_MAIN();
