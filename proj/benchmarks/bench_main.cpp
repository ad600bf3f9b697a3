#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "imfgraph/emd.hpp"
#include "imfgraph/graph_metrics.hpp"
#include "imfgraph/ts2graph.hpp"

using namespace imfgraph;

namespace {

std::vector<double> walk(std::size_t n, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<double> x(n);
  double level = 0.0;
  for (double& v : x) v = level += step(rng);
  return x;
}

void BM_Nvg(benchmark::State& state) {
  const auto x = walk(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ts2graph::nvg(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Nvg)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_Hvg(benchmark::State& state) {
  const auto x = walk(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ts2graph::hvg(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hvg)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oN);

void BM_Emd(benchmark::State& state) {
  const TimeSeries x(walk(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(emd::emd(x));
}
BENCHMARK(BM_Emd)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Eemd(benchmark::State& state) {
  const TimeSeries x(walk(2000));
  emd::EmdConfig cfg;
  cfg.trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(emd::eemd(x, cfg));
}
BENCHMARK(BM_Eemd)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Betweenness(benchmark::State& state) {
  const auto g = ts2graph::nvg(walk(static_cast<std::size_t>(state.range(0))));
  metrics::BetweennessOptions opt;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(metrics::betweenness(g, opt));
}
BENCHMARK(BM_Betweenness)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Recurrence(benchmark::State& state) {
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.314159 * static_cast<double>(i));
  for (auto _ : state) benchmark::DoNotOptimize(ts2graph::recurrence_graph(x));
}
BENCHMARK(BM_Recurrence)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
