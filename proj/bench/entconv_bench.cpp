// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "entconv/feasibility.hpp"
#include "entconv/isospectral.hpp"
#include "entconv/measures.hpp"
#include "entconv/random.hpp"

using namespace entconv;

namespace {

Execution exec_of(const benchmark::State& st) { return st.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& st) {
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  st.SetLabel(st.range(0) ? "parallel x" + std::to_string(threads) : "serial");
}

void BM_OrbitSearch(benchmark::State& st) {
  const Spectrum s = Spectrum::from_values({0.75, 0.25, 0, 0});
  for (auto _ : st)
    benchmark::DoNotOptimize(orbit_maximize(s, Measure::negativity, {.restarts = 16, .iters = 1000}, exec_of(st)));
  label(st);
}

void BM_FullyEntangledFraction(benchmark::State& st) {
  const auto rho = random_isospectral(Spectrum::from_values({0.6, 0.3, 0.1, 0}), 1);
  for (auto _ : st) benchmark::DoNotOptimize(fully_entangled_fraction(rho, 32, 0, exec_of(st)));
  label(st);
}

void BM_ReeEstimate(benchmark::State& st) {
  const auto rho = rho_lambda(0.75);
  for (auto _ : st) benchmark::DoNotOptimize(ree_estimate(rho, 8, 4, 0, exec_of(st)));
  label(st);
}

void BM_BatchMeasures(benchmark::State& st) {
  std::vector<DensityMatrix> states;
  for (std::uint64_t k = 0; k < 1000; ++k) states.push_back(random_isospectral(Spectrum::normalized({4, 3, 2, 1}), k));
  for (auto _ : st) benchmark::DoNotOptimize(batch_closed_form_measures(states, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(states.size()));
  label(st);
}

void BM_Scan(benchmark::State& st) {
  const auto grid = parse_grid("0.5,0.55,0.6,0.65,1");
  ScanConfig c;
  c.solver.max_iter = 2000;
  for (auto _ : st) benchmark::DoNotOptimize(scan(grid, c, exec_of(st)));
  label(st);
}

}  // namespace

BENCHMARK(BM_OrbitSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullyEntangledFraction)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReeEstimate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchMeasures)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
