#include <benchmark/benchmark.h>

#include "stsim/spectral.h"
#include "stsim/substitution.h"

namespace {

stsim::GneitingModel model() {
  return stsim::GneitingModel(2, stsim::MixtureMeasure::dirac(0.01),
                              stsim::VariogramSpec::cauchy(1.0, 1.0, 0.5));
}

stsim::GridSpec grid(int n, int nt) {
  stsim::GridSpec g;
  g.origin = {0.0, 0.0};
  g.mesh = {1.0, 1.0};
  g.counts = {n, n};
  g.dt = 0.2;
  g.nt = nt;
  return g;
}

void BM_BuildSpectralEnsemble(benchmark::State& state) {
  const auto m = model();
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(stsim::build_spectral_ensemble(m, p, 1));
  state.SetItemsProcessed(state.iterations() * p);
}
BENCHMARK(BM_BuildSpectralEnsemble)->Arg(500)->Arg(2000);

void BM_EvaluateSpectralGrid(benchmark::State& state) {
  const auto m = model();
  const auto ens = stsim::build_spectral_ensemble(m, 2000, 1);
  const auto pts = stsim::SpaceTimePointSet::from_grid(
      grid(static_cast<int>(state.range(0)), 10));
  for (auto _ : state)
    benchmark::DoNotOptimize(stsim::evaluate_spectral(ens, pts));
  state.SetItemsProcessed(state.iterations() * pts.size() * ens.p());
}
BENCHMARK(BM_EvaluateSpectralGrid)->Arg(30)->Arg(60);

void BM_BuildSubstitutionEnsemble(benchmark::State& state) {
  const auto m = model();
  std::vector<double> instants;
  for (int i = 0; i < 50; ++i) instants.push_back(0.2 * i);
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        stsim::build_substitution_ensemble(m, instants, p, 1));
  state.SetItemsProcessed(state.iterations() * p);
}
BENCHMARK(BM_BuildSubstitutionEnsemble)->Arg(500)->Arg(2000);

void BM_EvaluateSubstitutionGrid(benchmark::State& state) {
  const auto m = model();
  const auto g = grid(static_cast<int>(state.range(0)), 10);
  std::vector<double> instants;
  for (int i = 0; i < g.nt; ++i) instants.push_back(g.t0 + g.dt * i);
  const auto ens = stsim::build_substitution_ensemble(m, instants, 2000, 1);
  const auto pts = stsim::SpaceTimePointSet::from_grid(g);
  for (auto _ : state)
    benchmark::DoNotOptimize(stsim::evaluate_substitution(ens, pts));
  state.SetItemsProcessed(state.iterations() * pts.size() * ens.p());
}
BENCHMARK(BM_EvaluateSubstitutionGrid)->Arg(30)->Arg(60);

} // namespace

BENCHMARK_MAIN();
