#include <benchmark/benchmark.h>

#include "lrlab/chsck.hpp"
#include "lrlab/eigen_sym.hpp"
#include "lrlab/landscape.hpp"
#include "lrlab/langevin.hpp"
#include "lrlab/rng.hpp"

namespace {

void NormalStream(benchmark::State& state) {
  lrlab::Rng rng(7);
  double acc = 0.0;
  for (auto _ : state) {
    for (int i = 0; i < 1024; ++i) acc += rng.normal();
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(NormalStream);

void Eigendecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range());
  const auto instance = lrlab::sample_sk(n, 11);
  const lrlab::Matrix a = lrlab::scaled_couplings(instance);
  for (auto _ : state) {
    auto sys = lrlab::eigendecompose(a);
    benchmark::DoNotOptimize(sys.eigenvalues.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(Eigendecompose)->Arg(128)->Arg(256)->Arg(512)->Complexity();

void LangevinSteps(benchmark::State& state) {
  const int n = static_cast<int>(state.range());
  auto model =
      lrlab::eigenbasis_model_values_only(lrlab::sample_sk(n, 3));
  lrlab::SKRunConfig cfg;
  cfg.temperature = 1.0;
  cfg.schedule = lrlab::Schedule::power_law(0.1, 0.5);
  cfg.dt = 0.05;
  cfg.t_max = 1.0;
  auto spins = lrlab::init_random(model, cfg);
  for (auto _ : state) {
    lrlab::step(spins, model, cfg);
    benchmark::DoNotOptimize(spins.coeffs.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(LangevinSteps)->Arg(1024)->Arg(4096);

void ChsckIntegrate(benchmark::State& state) {
  const int steps = static_cast<int>(state.range());
  lrlab::ChsckConfig cfg;
  cfg.potential = lrlab::Potential::pure(3);
  cfg.temperature = 1.0;
  cfg.schedule = lrlab::Schedule::constant(0.5);
  cfg.dt = 1e-2;
  cfg.n_steps = steps;
  cfg.record_stride = steps;
  for (auto _ : state) {
    auto result = lrlab::integrate(cfg);
    benchmark::DoNotOptimize(result.trajectory.rows.data());
  }
  state.SetComplexityN(steps);
}
BENCHMARK(ChsckIntegrate)->Arg(200)->Arg(400)->Arg(800)->Complexity();

}  // namespace

BENCHMARK_MAIN();
