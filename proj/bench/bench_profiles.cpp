#include <map>
#include <random>

#include <benchmark/benchmark.h>

#include "qmix/kernels.hpp"

using namespace qmix;

namespace {

Graph random_graph(int n, double p, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.push_back({i - 1, i, 1.0});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (coin(rng)) edges.push_back({i, j, 1.0});
    }
  }
  return Graph(n, edges);
}

const SpectralDecomposition& fixture(int n) {
  static std::map<int, SpectralDecomposition> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, decompose(random_graph(n, 0.2, 7), MatrixKind::Adjacency)).first;
  return it->second;
}

void BM_LocalSerial(benchmark::State& st) {
  const auto& dec = fixture(static_cast<int>(st.range(0)));
  const auto modes = column_modes(dec, 0);
  const auto times = time_grid(100.0, 0.01);
  for (auto _ : st) benchmark::DoNotOptimize(local_profile_serial(modes, times));
}

void BM_LocalParallel(benchmark::State& st) {
  const auto& dec = fixture(static_cast<int>(st.range(0)));
  const auto modes = column_modes(dec, 0);
  const auto times = time_grid(100.0, 0.01);
  for (auto _ : st) benchmark::DoNotOptimize(local_profile_parallel(modes, times));
}

void BM_UniformSerial(benchmark::State& st) {
  const auto& dec = fixture(static_cast<int>(st.range(0)));
  const auto times = time_grid(5.0, 0.01);
  for (auto _ : st) benchmark::DoNotOptimize(uniform_profile_serial(dec, times));
}

void BM_UniformParallel(benchmark::State& st) {
  const auto& dec = fixture(static_cast<int>(st.range(0)));
  const auto times = time_grid(5.0, 0.01);
  for (auto _ : st) benchmark::DoNotOptimize(uniform_profile_parallel(dec, times));
}

}  // namespace

BENCHMARK(BM_LocalSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_UniformSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UniformParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
