#include <benchmark/benchmark.h>

#include "cyclone/scenario.hpp"

namespace {

const cyclone::SpeciesDb& db() {
  static const cyclone::SpeciesDb instance = cyclone::SpeciesDb::load_default();
  return instance;
}

cyclone::CycloneModel preset_model(const std::string& name) {
  return cyclone::make_model(db(), cyclone::load_preset(name));
}

void BM_RhsEvaluation(benchmark::State& state) {
  const cyclone::CycloneModel model = preset_model("cy1");
  auto [x, y] = model.initial_state();
  for (auto _ : state) benchmark::DoNotOptimize(model.ode_rhs(x, y));
}
BENCHMARK(BM_RhsEvaluation);

void BM_ImplicitEulerStep(benchmark::State& state) {
  const cyclone::CycloneModel model = preset_model("cy1");
  auto [x, y] = model.initial_state();
  for (auto _ : state) benchmark::DoNotOptimize(model.step(x, y, 0.01));
}
BENCHMARK(BM_ImplicitEulerStep);

void BM_SteadyState(benchmark::State& state) {
  const cyclone::CycloneModel model = preset_model("cy1");
  auto [x, y] = model.initial_state();
  for (auto _ : state) benchmark::DoNotOptimize(model.steady_state(x, y));
}
BENCHMARK(BM_SteadyState)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
