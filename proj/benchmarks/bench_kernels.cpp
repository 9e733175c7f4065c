#include <benchmark/benchmark.h>

#include "dyadic/continuum.hpp"
#include "dyadic/duality.hpp"
#include "dyadic/functionals.hpp"
#include "dyadic/oracle.hpp"

using namespace dyadic;

namespace {

DyadicField field(int n, int depth, const char* spec = "lognormal") {
  return random_field(1, DyadicTree::make({n, depth}), DataSpec::parse(spec));
}

void BM_NtMaxDyadic(benchmark::State& state) {
  const DyadicField a = field(1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nt_max_dyadic(a));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_NtMaxDyadic)->Arg(8)->Arg(12)->Arg(16);

void BM_CarlesonDyadic(benchmark::State& state) {
  const DyadicField b = field(1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(carleson_dyadic(b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(b.size()));
}
BENCHMARK(BM_CarlesonDyadic)->Arg(8)->Arg(12)->Arg(16);

void BM_MaximalDyadic(benchmark::State& state) {
  const BoundaryFunction h = nt_max_dyadic(field(1, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(maximal_dyadic(h));
}
BENCHMARK(BM_MaximalDyadic)->Arg(12);

void BM_CarlesonDyadic2d(benchmark::State& state) {
  const DyadicField b = field(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(carleson_dyadic(b));
}
BENCHMARK(BM_CarlesonDyadic2d)->Arg(6)->Arg(8);

void BM_StoppingForest(benchmark::State& state) {
  const DyadicField a = field(1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stopping_forest(a));
}
BENCHMARK(BM_StoppingForest)->Arg(12);

void BM_ExtremalG(benchmark::State& state) {
  const DyadicField a = field(1, 12);
  for (auto _ : state) benchmark::DoNotOptimize(extremal_g_for_ntmax(a, 2.0));
}
BENCHMARK(BM_ExtremalG);

void BM_NtMaxContinuum(benchmark::State& state) {
  const GridFunction f = random_grid(1, DyadicTree::make({1, static_cast<int>(state.range(0))}), 2,
                                     DataSpec::parse("uniform"));
  for (auto _ : state) benchmark::DoNotOptimize(nt_max_continuum(f, 2.0, GeometryConfig{}));
}
BENCHMARK(BM_NtMaxContinuum)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_CarlesonContinuum(benchmark::State& state) {
  const auto tree = DyadicTree::make({1, static_cast<int>(state.range(0))});
  const GridFunction g = random_grid(1, tree, 2, DataSpec::parse("uniform"));
  const auto family = test_cube_family(tree->config(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(carleson_continuum(g, 1.0, 2.0, GeometryConfig{}, family));
}
BENCHMARK(BM_CarlesonContinuum)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const DyadicField b = field(1, 2, "uniform");
  for (auto _ : state) benchmark::DoNotOptimize(dual_norm_wrt_ntball(b, 2.0));
}
BENCHMARK(BM_Oracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
