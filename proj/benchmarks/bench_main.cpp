#include <benchmark/benchmark.h>

#include "archdyn/schottky.hpp"
#include "archdyn/spectral.hpp"
#include "archdyn/subshift.hpp"
#include "archdyn/zeta.hpp"

namespace {

void BM_RankF(benchmark::State& state) {
  const int genus = static_cast<int>(state.range(0));
  const int level = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(archdyn::rank_F(genus, level).rank);
}
BENCHMARK(BM_RankF)->Args({2, 2})->Args({2, 3})->Args({2, 4})->Args({3, 3})
    ->Unit(benchmark::kMillisecond);

void BM_HurwitzZeta(benchmark::State& state) {
  const archdyn::Complex z(static_cast<double>(state.range(0)) / 4.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(archdyn::hurwitz_zeta(z, {2.7, 0.0}));
}
BENCHMARK(BM_HurwitzZeta)->Arg(-4)->Arg(2)->Arg(10);

void BM_HurwitzDerivativeAtZero(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(archdyn::hurwitz_dz_at_0(5.5));
}
BENCHMARK(BM_HurwitzDerivativeAtZero);

void BM_RegularizedDet(benchmark::State& state) {
  const auto spectrum = archdyn::multiplicities_from_model(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(archdyn::regularized_det(spectrum.multiplicities, {3.7, 0.0}));
  }
}
BENCHMARK(BM_RegularizedDet);

void BM_EnumeratePeriodic(benchmark::State& state) {
  const archdyn::Alphabet alphabet(static_cast<int>(state.range(0)));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(archdyn::enumerate_periodic(alphabet, n).size());
  }
}
BENCHMARK(BM_EnumeratePeriodic)->Args({2, 6})->Args({2, 8})->Args({3, 6})
    ->Unit(benchmark::kMillisecond);

void BM_LimitSet(benchmark::State& state) {
  const auto group = archdyn::SchottkyGroup::default_genus2();
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(archdyn::limit_set_sample(group, depth).size());
}
BENCHMARK(BM_LimitSet)->Arg(4)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_CuntzKrieger(benchmark::State& state) {
  const int hi = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(archdyn::ck_relations_check(2, 1, hi).passed());
}
BENCHMARK(BM_CuntzKrieger)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
