#include <benchmark/benchmark.h>

#include "lpq/corpus.hpp"
#include "lpq/cubes.hpp"
#include "lpq/filterbank.hpp"
#include "lpq/norms.hpp"
#include "lpq/parallel.hpp"
#include "lpq/verify.hpp"

namespace {

lpq::CorpusSpec noise(int dim, int size) {
  lpq::CorpusSpec s;
  s.kind = lpq::CorpusKind::spectral_noise;
  s.slope = 0.7;
  s.seed = 1;
  return s.at(dim, size);
}

void BM_Decompose1D(benchmark::State& state) {
  const auto f = lpq::generate(noise(1, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(lpq::decompose(f, 0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Decompose1D)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_Decompose2D(benchmark::State& state) {
  const auto f = lpq::generate(noise(2, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(lpq::decompose(f, 0));
}
BENCHMARK(BM_Decompose2D)->RangeMultiplier(2)->Range(32, 256);

// The O(P^2) pair sum over the unit cube.
void BM_QAlphaCube(benchmark::State& state) {
  const auto f = lpq::generate(noise(1, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(lpq::q_alpha_cube(f, 0.5, lpq::Cube::unit(1)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QAlphaCube)->RangeMultiplier(2)->Range(256, 4096)->Complexity(benchmark::oNSquared);

void BM_QAlphaFamily(benchmark::State& state) {
  lpq::parallel::set_worker_count(static_cast<unsigned>(state.range(1)));
  const auto f = lpq::generate(noise(2, static_cast<int>(state.range(0))));
  const auto cubes = lpq::CubeFamily{}.cubes(2, f.log2_size());
  for (auto _ : state) benchmark::DoNotOptimize(lpq::q_alpha(f, 0.5, cubes));
  lpq::parallel::set_worker_count(1);
}
BENCHMARK(BM_QAlphaFamily)->Args({32, 1})->Args({32, 4})->Unit(benchmark::kMillisecond);

void BM_GammaSet(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const lpq::Cube root = lpq::Cube::unit(dim);
  const auto pairs = lpq::sample_pairs(root, 64, 5);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& p = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(lpq::gamma_set(root, p.x, p.y, 2.0, lpq::required_gamma_depth(root, p.x, p.y, 2.0)));
  }
}
BENCHMARK(BM_GammaSet)->Arg(1)->Arg(2);

void BM_EvaluateKernel(benchmark::State& state) {
  const lpq::Cube root = lpq::Cube::unit(2);
  const auto pairs = lpq::sample_pairs(root, 64, 5);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lpq::evaluate_kernel(root, pairs[i++ % pairs.size()], 0.5, 4.0));
}
BENCHMARK(BM_EvaluateKernel);

}  // namespace
BENCHMARK_MAIN();
