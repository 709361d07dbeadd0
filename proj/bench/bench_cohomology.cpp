// Serial reference vs the OpenMP path over weights.
#include <benchmark/benchmark.h>

#include "tautcoh/cech.hpp"

using namespace tautcoh;

namespace {

BundleModel model(int which) {
  static const Realization U24(Matrix::from_ints(Field::rationals(), {{1, 1, 1, 0}, {0, 1, 2, 1}}));
  static const Realization U25(Matrix::from_ints(Field::rationals(), {{1, 1, 1, 1, 0}, {0, 1, 2, 3, 1}}));
  switch (which) {
    case 0: return build_model(BundleExpr::parse("sym(2,Q)"), U24);
    case 1: return build_model(BundleExpr::parse("sym(3,Q)"), U24);
    default: return build_model(BundleExpr::parse("wedge(2,Q)"), U25);
  }
}

const char* label(int which) {
  static const char* names[] = {"sym2Q U2,4", "sym3Q U2,4", "wedge2Q U2,5"};
  return names[which];
}

void BM_Serial(benchmark::State& state) {
  const auto m = model(static_cast<int>(state.range(0)));
  state.SetLabel(label(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_serial(m).h);
}

void BM_Parallel(benchmark::State& state) {
  const auto m = model(static_cast<int>(state.range(0)));
  state.SetLabel(label(static_cast<int>(state.range(0))));
  CohomologyOptions o;
  o.jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(m, o).h);
}

}  // namespace

BENCHMARK(BM_Serial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)->ArgsProduct({{0, 1, 2}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
