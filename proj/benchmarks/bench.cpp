#include <benchmark/benchmark.h>

#include <cmath>

#include "splab/boundstates.hpp"
#include "splab/family.hpp"
#include "splab/homotopy.hpp"
#include "splab/marchenko.hpp"
#include "splab/special.hpp"

namespace {

void BM_upper_gamma(benchmark::State& state) {
  double z = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(splab::upper_incomplete_gamma(0.5, z));
    z = z < 30.0 ? z + 0.1 : 0.0;
  }
}
BENCHMARK(BM_upper_gamma);

void BM_envelope(benchmark::State& state) {
  splab::SolutionParams prm;
  prm.p = 2.0;
  prm.a = 0.3;
  prm.xi1 = 0.7;
  double x = -10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(splab::eval_E(prm, x));
    x = x < 10.0 ? x + 0.05 : -10.0;
  }
}
BENCHMARK(BM_envelope);

void BM_homotopy_solve(benchmark::State& state) {
  splab::HomotopyConfig cfg;
  cfg.b = {0.1, 0.0};
  cfg.C2 = 0.0;
  cfg.mu_max = int(state.range(0));
  cfg.grid = {-20.0, 20.0, 2001};
  for (auto _ : state) {
    benchmark::DoNotOptimize(splab::homotopy_solve(cfg));
  }
}
BENCHMARK(BM_homotopy_solve)->Arg(1)->Arg(3);

void BM_neumann_solve(benchmark::State& state) {
  splab::SpectralData sd;
  sd.bound_states = {{1.0, 1.0}};
  splab::NeumannConfig cfg;
  cfg.mu_max = int(state.range(0));
  cfg.corner = {0.0, 2.0, 61};
  for (auto _ : state) {
    benchmark::DoNotOptimize(splab::neumann_solve(sd, cfg));
  }
}
BENCHMARK(BM_neumann_solve)->Arg(1)->Arg(3);

void BM_count_poschl_teller(benchmark::State& state) {
  splab::EigencountConfig cfg;
  cfg.steps = std::size_t(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(splab::count_bound_states(
        [](double x) {
          const double s = splab::sech(x);
          return -6.0 * s * s;
        },
        cfg));
  }
}
BENCHMARK(BM_count_poschl_teller)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
