// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "flashcard/engine.hpp"

namespace {

void BM_Steps(benchmark::State& state, const char* shorthand) {
  const auto schedule = flashcard::Schedule::parse(shorthand, 7);
  flashcard::Game game(schedule, {.keep_event_log = false, .keep_times = false});
  for (auto _ : state) benchmark::DoNotOptimize(game.step());
  state.SetItemsProcessed(state.iterations());
}

void BM_SlowStepsWithTimes(benchmark::State& state) {
  flashcard::Game game(flashcard::Schedule::slow(), {.keep_event_log = false});
  for (auto _ : state) benchmark::DoNotOptimize(game.step());
  state.SetItemsProcessed(state.iterations());
}

BENCHMARK_CAPTURE(BM_Steps, slow, "slow");
BENCHMARK_CAPTURE(BM_Steps, affine, "affine:3:1");
BENCHMARK_CAPTURE(BM_Steps, uniform, "uniform");
BENCHMARK_CAPTURE(BM_Steps, poisson, "poisson");
BENCHMARK_CAPTURE(BM_Steps, constant, "constant:5");
BENCHMARK(BM_SlowStepsWithTimes);

}  // namespace
