// Copyright 2026 The intentsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Trial-level parallelism: run_suite_serial against run_suite with jobs.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "intent/suite.hpp"

namespace {

const intent::SuiteConfig& suite() {
  static const intent::SuiteConfig s = intent::load_suite(
      std::filesystem::path(INTENT_DATA_DIR) / "suites/prompt_kinds.json");
  return s;
}

void BM_RunSuiteSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(intent::run_suite_serial(suite(), {}));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(2 * suite().entries.size()));
}
BENCHMARK(BM_RunSuiteSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_RunSuite(benchmark::State& state) {
  intent::SuiteOptions o;
  o.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(intent::run_suite(suite(), o));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(2 * suite().entries.size()));
}
BENCHMARK(BM_RunSuite)->Arg(1)->Arg(2)->Arg(4)->Arg(8)
    ->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
