#include <benchmark/benchmark.h>

#include "bpr/generators.hpp"
#include "bpr/recognizer.hpp"

using namespace bpr;

static void BM_RecognizeOptimal1P(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = genOptimal1Planar(genPseudoDoubleWheel((n - 2) / 2));
  RecognizeOptions opts;
  opts.fastScan = true;
  opts.realizeWitness = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(recognize(g, Mode::OneP, opts).accepted);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_RecognizeOptimal1P)->Arg(50)->Arg(100)->Arg(200)->Complexity();

static void BM_OracleK6(benchmark::State& state) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 6; u++)
    for (int v = u + 1; v < 6; v++) edges.emplace_back(u, v);
  const Graph k6 = Graph::fromEdges(6, edges);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerateEmbeddings(k6, {}, Mode::OneP).size());
  }
}
BENCHMARK(BM_OracleK6);

BENCHMARK_MAIN();
