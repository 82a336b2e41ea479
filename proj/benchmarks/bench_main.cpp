// Microbenchmarks for the hot paths: completion, normal forms, rank.
#include <benchmark/benchmark.h>

#include "qcert/exactmatrix.hpp"
#include "qcert/qbuilders.hpp"

#include <memory>
#include <random>

using namespace qcert;

static void BM_CompleteFiniteQuotient(benchmark::State& state) {
  unsigned N = unsigned(state.range(0));
  for (auto _ : state) {
    auto F = std::make_shared<CycField>(N);
    FDBuild b = build_uqstar(F, 2);
    benchmark::DoNotOptimize(b.alg.dim());
  }
}
BENCHMARK(BM_CompleteFiniteQuotient)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_NormalForm(benchmark::State& state) {
  auto F = std::make_shared<CycField>(3);
  FDBuild b = build_uqstar(F, 2);
  // a fresh random word each iteration; rebuilding the poly exercises nf
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> gen(0, 3);
  for (auto _ : state) {
    Word w;
    for (int i = 0; i < 12; ++i) w.push_back(char(gen(rng)));
    NcPoly p = b.alg.rs().nf(NcPoly::mono(*F, w));
    benchmark::DoNotOptimize(p.size());
  }
}
BENCHMARK(BM_NormalForm)->Unit(benchmark::kMicrosecond);

static void BM_MatrixRank(benchmark::State& state) {
  auto F = std::make_shared<CycField>(3);
  int n = int(state.range(0));
  std::mt19937 rng(999);
  std::uniform_int_distribution<int> coef(-3, 3);
  ExactMatrix m(*F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.add(i, j, Cyc::integer(*F, coef(rng)));
  for (auto _ : state) {
    ExactMatrix copy = m;
    benchmark::DoNotOptimize(copy.rank());
  }
}
BENCHMARK(BM_MatrixRank)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
