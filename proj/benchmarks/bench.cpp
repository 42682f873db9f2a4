#include <benchmark/benchmark.h>

#include <cmath>

#include "combed/catalog.hpp"
#include "combed/classify.hpp"
#include "combed/disk.hpp"
#include "combed/realfilter.hpp"
#include "combed/spectrum.hpp"

namespace {

using namespace combed;

void BM_ComputeCoefficients(benchmark::State& state) {
  const auto step = *make("step", {{"theta0", 0.7}}).evaluator;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_coefficients(step, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ComputeCoefficients)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_KernelFilterEval(benchmark::State& state) {
  const auto square = *make("square_wave").evaluator;
  double theta = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_filter_eval(square, theta, 0.1));
    theta = theta > 3.0 ? -3.0 : theta + 0.01;
  }
}
BENCHMARK(BM_KernelFilterEval);

void BM_MultiplierFilter(benchmark::State& state) {
  const auto c = make("delta").coefficients(static_cast<std::size_t>(state.range(0))).materialized();
  for (auto _ : state) benchmark::DoNotOptimize(multiplier_filter(c, 0.1).materialized());
}
BENCHMARK(BM_MultiplierFilter)->Range(64, 4096);

void BM_ClassifyPointwise(benchmark::State& state) {
  const auto step = *make("step").evaluator;
  const auto schedule = default_eps_schedule();
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_pointwise(step, static_cast<std::size_t>(state.range(0)), schedule));
  }
}
BENCHMARK(BM_ClassifyPointwise)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_BoundaryValue(benchmark::State& state) {
  const auto closed = make("square_wave").coefficients(256);
  const auto truncated = closed.materialized();
  const auto& c = state.range(0) == 0 ? closed : truncated;
  const auto schedule = default_delta_schedule();
  for (auto _ : state) benchmark::DoNotOptimize(boundary_value(c, 1.0, schedule));
  state.SetLabel(state.range(0) == 0 ? "closed form" : "series");
}
BENCHMARK(BM_BoundaryValue)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
