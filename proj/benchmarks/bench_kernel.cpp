#include <benchmark/benchmark.h>

#include "shockmix/analysis.hpp"
#include "shockmix/kernel.hpp"
#include "shockmix/montecarlo.hpp"

using namespace shockmix;

namespace {

// Starts far enough from the boundary that no trajectory is absorbed within
// the cap, so every iteration performs exactly kSteps steps.
constexpr std::uint64_t kSteps = 1000;
constexpr std::int64_t kFar = 2000;

void BM_QuadrantWalk(benchmark::State& state) {
  std::uint64_t stream = 0;
  for (auto _ : state) {
    CounterRng rng(1, stream++);
    benchmark::DoNotOptimize(quadrant_hitting(kFar, kFar, kSteps, rng));
  }
  state.SetItemsProcessed(state.iterations() * kSteps);
}
BENCHMARK(BM_QuadrantWalk);

void BM_GeneralOneBlockVoter(benchmark::State& state) {
  const auto s0 = Configuration::parse(std::to_string(kFar) + ":" + std::to_string(kFar));
  const auto params = make_params(1.0);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    CounterRng rng(1, stream++);
    benchmark::DoNotOptimize(hitting_time_discrete(s0, params, kSteps, rng));
  }
  state.SetItemsProcessed(state.iterations() * kSteps);
}
BENCHMARK(BM_GeneralOneBlockVoter);

void BM_StepInPlace(benchmark::State& state) {
  const auto s0 = uniform_configuration(static_cast<std::size_t>(state.range(0)), 50);
  const auto params = make_params(0.5, 0.5);
  auto s = s0;
  CounterRng rng(2, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_in_place(s, params, rng));
    if (s.num_blocks() == 0) s = s0;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StepInPlace)->RangeMultiplier(4)->Range(1, 256);

void BM_GillespieStep(benchmark::State& state) {
  const auto s0 = uniform_configuration(static_cast<std::size_t>(state.range(0)), 50);
  const auto params = make_params(0.5, 0.5);
  auto s = s0;
  CounterRng rng(3, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gillespie_step_in_place(s, params, rng));
    if (s.num_blocks() == 0) s = s0;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GillespieStep)->RangeMultiplier(4)->Range(1, 256);

void BM_TransitionDistributionDouble(benchmark::State& state) {
  const auto s = uniform_configuration(static_cast<std::size_t>(state.range(0)), 3);
  const auto params = make_params(0.3, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(transition_distribution(s, params));
}
BENCHMARK(BM_TransitionDistributionDouble)->RangeMultiplier(4)->Range(1, 64);

void BM_TransitionDistributionExact(benchmark::State& state) {
  const auto s = uniform_configuration(static_cast<std::size_t>(state.range(0)), 3);
  const auto params = make_exact_params(Rational(3, 10), Rational(7, 10));
  for (auto _ : state) benchmark::DoNotOptimize(transition_distribution(s, params));
}
BENCHMARK(BM_TransitionDistributionExact)->RangeMultiplier(4)->Range(1, 64);

}  // namespace

BENCHMARK_MAIN();
