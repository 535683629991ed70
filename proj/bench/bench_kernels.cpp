// Serial reference vs OpenMP path for each data-parallel kernel.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "recoil/density.hpp"
#include "recoil/kernels.hpp"
#include "recoil/oracle.hpp"

using namespace recoil;

namespace {

ModelParams bench_params() {
  ParamInputs in;
  in.gamma = 0.01;
  in.mu = 2000.0;
  return make_params(in);
}

Exec mode(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_DensityAssembly(benchmark::State& st) {
  const ModelParams p = bench_params();
  const SpatialGrid g = SpatialGrid::symmetric(12.0 * p.lambda, 0.05 * p.lambda);
  const Scenario sc = Scenario::superposition(2.0 * p.lambda, 0.25 * p.lambda);
  for (auto _ : st) {
    benchmark::DoNotOptimize(reduced_density(g, 1000.0 / p.gamma, sc, true, p, mode(st)));
  }
}

void BM_AmplitudeRhs(benchmark::State& st) {
  const std::size_t n = 400;
  kernels::AmplitudeSystem sys;
  sys.n = n;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  sys.detuning_a = u(rng);
  for (std::size_t i = 0; i < n; ++i) {
    sys.detuning_b.push_back(u(rng));
    sys.coupling.push_back(u(rng));
  }
  sys.detuning_d.assign(n * n, 0.25);
  std::vector<cplx> x(sys.dimension(), cplx{0.1, 0.2}), dx(sys.dimension());
  for (auto _ : st) {
    kernels::amplitude_rhs(sys, x, dx, mode(st));
    benchmark::DoNotOptimize(dx.data());
  }
}

void BM_DensityQuadrature(benchmark::State& st) {
  const ModelParams p = bench_params();
  const FreeWavePacket w = Scenario::superposition(2.0 * p.lambda, 0.25 * p.lambda).wave();
  const QuadratureOptions opt{256, 0.05};
  for (auto _ : st) {
    benchmark::DoNotOptimize(density_quadrature(0.3, -2.0, 1e4, w, p, opt, mode(st)));
  }
}

}  // namespace

BENCHMARK(BM_DensityAssembly)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AmplitudeRhs)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DensityQuadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
