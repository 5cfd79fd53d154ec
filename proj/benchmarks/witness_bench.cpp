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

#include "mdiew/witness.hpp"

namespace {

mdiew::Witness witness_for(int n) {
  return n == 2 ? mdiew::werner_witness() : mdiew::w_state_witness(2.0 / 3.0);
}

void BM_Decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mdiew::Witness w = witness_for(n);
  const mdiew::AncillaBasis basis = mdiew::default_basis(n);
  const mdiew::OutcomeTuple o = mdiew::OutcomeTuple::all_ones(n);
  for (auto _ : state) benchmark::DoNotOptimize(mdiew::decompose(w, basis, o));
}
BENCHMARK(BM_Decompose)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_OutcomeCoefficients(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mdiew::Witness w = witness_for(n);
  const mdiew::AncillaBasis basis = mdiew::default_basis(n);
  for (auto _ : state) benchmark::DoNotOptimize(mdiew::outcome_coefficients(w, basis));
}
BENCHMARK(BM_OutcomeCoefficients)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
