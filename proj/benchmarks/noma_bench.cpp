#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>

#include "noma/cooperative.hpp"
#include "noma/experiments.hpp"
#include "noma/mimo.hpp"
#include "noma/must.hpp"
#include "noma/random.hpp"
#include "noma/scenario.hpp"

namespace {

noma::coop::Scenario bench_scenario(std::uint64_t trials) {
  noma::coop::Scenario s;
  s.weak_user = {5.0, 0.0};
  s.strong_user = {2.5, 0.0};
  s.rho = 1000.0;
  s.alloc = noma::rates::PowerAllocation::fixed(0.8, 0.2);
  s.targets = {0.5, 0.5};
  s.trials = trials;
  s.seed = 1;
  return s;
}

void BM_PhiloxUniform(benchmark::State& state) {
  noma::CounterRng rng(1, 0, 0, noma::Link::kBsToWeak);
  for (auto _ : state) benchmark::DoNotOptimize(rng.uniform());
}
BENCHMARK(BM_PhiloxUniform);

void BM_CooperativeTrial(benchmark::State& state) {
  const auto s = bench_scenario(1);
  std::uint64_t t = 0;
  for (auto _ : state) {
    const auto trial = noma::coop::draw_trial(s, s.strong_user, s.rho, 0, t++);
    benchmark::DoNotOptimize(noma::coop::cooperative_outcome(trial, s.alloc, s.targets));
    benchmark::DoNotOptimize(noma::coop::noncooperative_outcome(trial, s.alloc, s.targets));
  }
}
BENCHMARK(BM_CooperativeTrial);

void BM_Simulate(benchmark::State& state) {
  const auto s = bench_scenario(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(noma::coop::simulate(s, s.strong_user, s.rho, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_SmRates(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const noma::mimo::SmConfig config{m, 2.0, 4.0, 0.25};
  noma::CounterRng rng(3, 0, 0, noma::Link::kBsToStrong);
  const auto h_strong = noma::channel::draw_mimo_channel(rng, m, 1.0);
  const auto h_weak = noma::channel::draw_mimo_channel(rng, m, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(noma::mimo::sm_rates(config, h_strong, h_weak));
}
BENCHMARK(BM_SmRates)->RangeMultiplier(2)->Range(1, 8);

void BM_Demodulate(benchmark::State& state) {
  using namespace noma::must;
  const auto far = static_cast<Modulation>(state.range(0));
  const auto composite = build_composite({far, Modulation::kQam16, 0.85, Category::kCat2});
  const Symbol y{0.3, -0.2};
  for (auto _ : state) benchmark::DoNotOptimize(demodulate(composite, y, 0.1));
}
BENCHMARK(BM_Demodulate)
    ->Arg(static_cast<int>(noma::must::Modulation::kQpsk))
    ->Arg(static_cast<int>(noma::must::Modulation::kQam16));

void BM_HarnessOutageMap(benchmark::State& state) {
  const auto s = noma::harness::parse_scenario(
      R"({"experiment": "Fig4OutageMap", "seed": 1, "trials": 10000,
          "grid": {"x": {"start": -4, "stop": 4, "count": 3}, "y": {"start": -4, "stop": 4, "count": 3}}})");
  for (auto _ : state) benchmark::DoNotOptimize(noma::harness::run(s));
}
BENCHMARK(BM_HarnessOutageMap)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
