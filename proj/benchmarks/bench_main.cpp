#include <benchmark/benchmark.h>

#include "annulus/counting.hpp"
#include "annulus/specfun.hpp"
#include "annulus/zeros.hpp"

namespace {

using namespace annulus;

const AnnulusGeometry& geom21() {
  static const AnnulusGeometry geom(2.0, 1.0, SlopeRational{1, 3});
  return geom;
}

void BM_BesselJY(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  // x >= n keeps Y_n finite for every order
  const double lo = n + 0.5;
  double x = lo;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_jy(n, x));
    x = x < lo + 300.0 ? x + 1.37 : lo;
  }
}
BENCHMARK(BM_BesselJY)->Arg(0)->Arg(10)->Arg(100)->Arg(1000);

void BM_CrossProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = n + 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_product_sign(geom21(), n, x));
    x = x < 2.0 * n + 50.0 ? x + 0.731 : n + 1.0;
  }
}
BENCHMARK(BM_CrossProduct)->Arg(10)->Arg(100)->Arg(400);

void BM_FindZero(benchmark::State& state) {
  const RegimeConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(find_zero(geom21(), 100, 20, cfg));
}
BENCHMARK(BM_FindZero);

void BM_EigCount(benchmark::State& state) {
  const RegimeConfig cfg;
  const double mu = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eig_count(geom21(), mu, cfg, 1));
}
BENCHMARK(BM_EigCount)->Arg(20)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_LatticeUniform(benchmark::State& state) {
  const double mu = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lattice_count_uniform(geom21(), mu, 0.25));
}
BENCHMARK(BM_LatticeUniform)->Arg(100)->Arg(1000)->Arg(10000);

void BM_LatticeSlanted(benchmark::State& state) {
  const double mu = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lattice_count_slanted(geom21(), mu, 0.25));
}
BENCHMARK(BM_LatticeSlanted)->Arg(100)->Arg(1000)->Arg(10000);

void BM_LatticeVariable(benchmark::State& state) {
  const RegimeConfig cfg;
  const double mu = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lattice_count_variable(geom21(), mu, cfg, 1));
}
BENCHMARK(BM_LatticeVariable)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
