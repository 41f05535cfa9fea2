// Serial reference against the OpenMP path for the three parallel kernels.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include "fdist/lemmas.hpp"
#include "fdist/search.hpp"

using namespace fdist;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::Parallel : Execution::Serial;
}

void BM_Scan(benchmark::State& state) {
  const auto z4 = make_cyclic(4), v = parse_group("Z2xZ2");
  ScanOptions o;
  o.levels = {1, 2};
  o.effort = Effort::low();
  o.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(scan_bijections(z4, v, o).min_distortion);
}

void BM_LevelTwoNorm(benchmark::State& state) {
  const auto z6 = make_cyclic(6), s3 = make_symmetric(3);
  const InducedHom hom(GroupBijection(s3, z6, {0, 3, 1, 5, 2, 4}), irreps_of(z6), irreps_of(s3));
  for (auto _ : state) benchmark::DoNotOptimize(level_k_norm(hom, 2, Effort::low(), 0, mode(state)).value);
}

void BM_BlockLemma(benchmark::State& state) {
  BlockLemmaOptions o;
  o.dim = 4;
  o.trials = 2000;
  o.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_invmult(o).worst_margin);
}

void BM_NormGap(benchmark::State& state) {
  const auto t = irreps_of(make_dihedral(4));
  for (auto _ : state) benchmark::DoNotOptimize(verify_norm_gap(t, 2000, 0, mode(state)).worst_margin);
}

}  // namespace

BENCHMARK(BM_Scan)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LevelTwoNorm)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockLemma)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NormGap)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
