#include <benchmark/benchmark.h>

#include "swave/experiments.hpp"
#include "swave/integrators.hpp"
#include "swave/noise.hpp"

using namespace swave;

static void BM_SpectralDecompose(benchmark::State& state) {
  const int n_cells = static_cast<int>(state.range(0));
  for (auto _ : state) {
    FemSystem system(build_uniform_mesh(n_cells));
    system.spectral_decompose();
    benchmark::DoNotOptimize(system.eigenvalues());
  }
}
BENCHMARK(BM_SpectralDecompose)->Arg(64)->Arg(256);

static void BM_StmStep(benchmark::State& state) {
  FemSystem system(build_uniform_mesh(static_cast<int>(state.range(0))));
  system.spectral_decompose();
  Propagator prop = make_stm_propagator(system, 0.01);
  VectorXd u1 = VectorXd::Ones(system.dof());
  VectorXd u2 = VectorXd::Zero(system.dof());
  VectorXd w = VectorXd::Constant(system.dof(), 1e-3);
  for (auto _ : state) {
    stm_step_spectral(prop, u1, u2, w);
    benchmark::DoNotOptimize(u1.data());
  }
}
BENCHMARK(BM_StmStep)->Arg(64)->Arg(1024);

static void BM_NoiseWindow(benchmark::State& state) {
  CoupledPath path(1, 1.0 / 1024.0, 1024, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto inc = path.window(0, 1024);
    benchmark::DoNotOptimize(inc.values.data());
  }
}
BENCHMARK(BM_NoiseWindow)->Arg(31)->Arg(255);

static void BM_ImplicitStep(benchmark::State& state) {
  FemSystem system(build_uniform_mesh(static_cast<int>(state.range(0))));
  CnmScheme scheme(system, 0.01);
  State x{VectorXd::Ones(system.dof()), VectorXd::Zero(system.dof())};
  VectorXd w = VectorXd::Constant(system.dof(), 1e-3);
  for (auto _ : state) {
    x = scheme.step(x, w);
    benchmark::DoNotOptimize(x.u1.data());
  }
}
BENCHMARK(BM_ImplicitStep)->Arg(64)->Arg(1024);

BENCHMARK_MAIN();
