#include <benchmark/benchmark.h>

#include "annulus/critical.hpp"
#include "annulus/green.hpp"
#include "annulus/specfun.hpp"

using namespace annulus;

namespace {

void BM_RobinEval(benchmark::State& state) {
  const AnnulusGeometry g(3, 0.5);
  const double r = 0.5 + 0.5 * static_cast<double>(state.range(0)) / 100.0;
  const TruncationPolicy policy;
  for (auto _ : state) benchmark::DoNotOptimize(green::robin_eval(g, r, policy));
}
BENCHMARK(BM_RobinEval)->Arg(10)->Arg(50)->Arg(90)->Arg(99);

void BM_GreenEval(benchmark::State& state) {
  const AnnulusGeometry g(static_cast<int>(state.range(0)), 0.3);
  Point x = Point::on_axis(g.n(), 0.6);
  Point y = Point::on_axis(g.n(), 0.0);
  y[0] = 0.2;
  y[1] = 0.5;
  const TruncationPolicy policy;
  for (auto _ : state) benchmark::DoNotOptimize(green::green_eval(g, x, y, policy));
}
BENCHMARK(BM_GreenEval)->DenseRange(3, 6);

void BM_Gegenbauer(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specfun::gegenbauer_eval(1.5, m, 0.37));
}
BENCHMARK(BM_Gegenbauer)->RangeMultiplier(4)->Range(4, 1024);

void BM_FindCriticalPoint(benchmark::State& state) {
  const AnnulusGeometry g(static_cast<int>(state.range(0)), 0.4);
  const TruncationPolicy policy;
  for (auto _ : state) benchmark::DoNotOptimize(critical::find_critical_point(g, policy));
}
BENCHMARK(BM_FindCriticalPoint)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
