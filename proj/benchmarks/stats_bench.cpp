// Copyright 2026 The mdiew Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "mdiew/stats.hpp"

namespace {

void BM_SimulateCounts(benchmark::State& state) {
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  const mdiew::ProbabilityTable table =
      mdiew::probability_table(mdiew::werner(0.9), mdiew::default_basis(2), mdiew::IdealBsm{});
  mdiew::Rng rng = mdiew::make_rng(mdiew::Seed{5});
  for (auto _ : state) benchmark::DoNotOptimize(mdiew::simulate_counts(table, shots, rng));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SimulateCounts)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

void BM_EstimateValue(benchmark::State& state) {
  const mdiew::AncillaBasis basis = mdiew::default_basis(3);
  const mdiew::ProbabilityTable table = mdiew::probability_table(mdiew::w_state_noise(0.8), basis, mdiew::IdealBsm{});
  const mdiew::OutcomeCoefficientTable coeffs = mdiew::outcome_coefficients(mdiew::w_state_witness(2.0 / 3.0), basis);
  mdiew::Rng rng = mdiew::make_rng(mdiew::Seed{6});
  const mdiew::CountRecord counts = mdiew::simulate_counts(table, 100000, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mdiew::estimate_value(counts, coeffs));
}
BENCHMARK(BM_EstimateValue)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
