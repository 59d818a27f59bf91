#include <benchmark/benchmark.h>

#include <vector>

#include "centralcfg/analysis.hpp"
#include "centralcfg/direct.hpp"
#include "centralcfg/dziobek.hpp"
#include "centralcfg/geometry.hpp"
#include "centralcfg/lemmas.hpp"

using namespace centralcfg;

namespace {

void BM_SolveNormalizedFourBodies(benchmark::State& state) {
  const MassVector m({1, 2, 3, 4});
  const std::vector<int> pattern{-1, -1, 1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(dziobek::solve_normalized(m, Exponent(-1.5), pattern));
}
BENCHMARK(BM_SolveNormalizedFourBodies);

void BM_SolveNormalizedFiveBodies(benchmark::State& state) {
  const MassVector m({1, 2, 1, 1, 1});
  const std::vector<int> pattern{-1, -1, 1, 1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(dziobek::solve_normalized(m, Exponent(-1.5), pattern));
}
BENCHMARK(BM_SolveNormalizedFiveBodies);

void BM_SolvePositionsPlanar(benchmark::State& state) {
  const MassVector m({1, 2, 3, 4});
  direct::PositionSolveOptions options;
  options.starts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(direct::solve_positions(m, 2, Exponent(-1.5), options));
}
BENCHMARK(BM_SolvePositionsPlanar)->Arg(16)->Arg(64);

void BM_Embed(benchmark::State& state) {
  const dziobek::CCSolution sol =
      dziobek::solve_normalized(MassVector({1, 2, 1, 1, 1}), Exponent(-1.5), std::vector<int>{-1, -1, 1, 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(geometry::embed(sol.distances, 3));
}
BENCHMARK(BM_Embed);

void BM_Analyze(benchmark::State& state) {
  const dziobek::CCSolution sol =
      dziobek::solve_normalized(MassVector({1, 2, 3, 4}), Exponent(-1.5), std::vector<int>{-1, -1, 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(analysis::analyze(sol));
}
BENCHMARK(BM_Analyze);

void BM_Lemma2Suite(benchmark::State& state) {
  lemmas::PropertyOptions options;
  options.samples = state.range(0);
  options.minimizer_runs = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lemmas::check_lemma2(options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lemma2Suite)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Lemma3Suite(benchmark::State& state) {
  lemmas::PropertyOptions options;
  options.samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(lemmas::check_lemma3(options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lemma3Suite)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_LaguerreSuite(benchmark::State& state) {
  lemmas::PropertyOptions options;
  options.samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(lemmas::check_laguerre(options));
}
BENCHMARK(BM_LaguerreSuite)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
