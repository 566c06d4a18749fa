#include "symstiefel/manifold.hpp"
#include "symstiefel/retraction.hpp"

#include <benchmark/benchmark.h>

using namespace symstiefel;

namespace {

struct Fixture {
  Matrix x;
  Matrix egrad;
  RiemannianGradient rg;

  Fixture(Index n, Index p) {
    x = rand_symplectic(n, p, InitStrategy::Canonical, 1);
    egrad = rand_gaussian(2 * n, 2 * p, 2);
    rg = riemannian_gradient(x, egrad, MetricSpec::defaults(Orthonormalization::I));
  }
};

void BM_Expm(benchmark::State& state) {
  const Index m = state.range(0);
  const Matrix w = rand_gaussian(m, m, 3);
  const Matrix a = apply_j_left(Matrix(0.1 * (w + w.transpose())));
  for (auto _ : state) benchmark::DoNotOptimize(expm(a));
}
BENCHMARK(BM_Expm)->Arg(4)->Arg(20)->Arg(40)->Arg(200);

void BM_RiemannianGradient(benchmark::State& state) {
  const Fixture f(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        riemannian_gradient(f.x, f.egrad, MetricSpec::defaults(Orthonormalization::I)));
  }
}
BENCHMARK(BM_RiemannianGradient)->Args({100, 5})->Args({1000, 5})->Args({1000, 20});

void BM_CayleyLowRank(benchmark::State& state) {
  const Fixture f(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(retract_cayley_lowrank(f.x, f.rg.p_f, 1e-3));
}
BENCHMARK(BM_CayleyLowRank)->Args({50, 2})->Args({200, 2})->Args({1000, 20});

void BM_CayleyDense(benchmark::State& state) {
  const Fixture f(state.range(0), state.range(1));
  const Matrix z = -f.rg.grad;
  for (auto _ : state) benchmark::DoNotOptimize(retract_cayley_dense(f.x, z, 1e-3));
}
BENCHMARK(BM_CayleyDense)->Args({50, 2})->Args({200, 2});

void BM_QuasiGeodesic(benchmark::State& state) {
  const Fixture f(state.range(0), state.range(1));
  const Matrix z = -f.rg.grad;
  for (auto _ : state) benchmark::DoNotOptimize(retract_qgeo(f.x, z, 1e-3));
}
BENCHMARK(BM_QuasiGeodesic)->Args({50, 2})->Args({200, 2})->Args({1000, 20});

}  // namespace
BENCHMARK_MAIN();
