// Serial reference versus OpenMP subgroup sweeps on the family lattices.

#include <benchmark/benchmark.h>

#include "flasque/tate.hpp"
#include "flasque/tori.hpp"

namespace {

using flasque::Execution;

void run_flasque(benchmark::State& state, const flasque::GLattice& x, Execution mode) {
  for (auto _ : state) {
    auto rep = flasque::is_flasque(x, mode);
    benchmark::DoNotOptimize(rep.holds);
  }
}

void BM_XS8_Serial(benchmark::State& state) { run_flasque(state, flasque::build_XS(8), Execution::serial); }
void BM_XS8_Parallel(benchmark::State& state) { run_flasque(state, flasque::build_XS(8), Execution::parallel); }

void BM_Induced_Serial(benchmark::State& state) {
  run_flasque(state, flasque::build_XS_induced(4, static_cast<std::size_t>(state.range(0))), Execution::serial);
}
void BM_Induced_Parallel(benchmark::State& state) {
  run_flasque(state, flasque::build_XS_induced(4, static_cast<std::size_t>(state.range(0))), Execution::parallel);
}

void BM_ResolutionCheck(benchmark::State& state) {
  const auto mode = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  auto fr = flasque::build_resolution(flasque::build_XS(8));
  for (auto _ : state) {
    auto check = flasque::check_flasque_resolution(fr.XT, fr.XQ, fr.XS, fr.incl, fr.quot, mode);
    benchmark::DoNotOptimize(check.flasque_s.holds);
  }
}

}  // namespace

BENCHMARK(BM_XS8_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_XS8_Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Induced_Serial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Induced_Parallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResolutionCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
