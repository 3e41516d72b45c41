// Microbenchmarks for the hot paths: dominant solves across exponents and
// dimensions, the dyadic averaging transform, and the norm primitives.

#include "ncmax/dominant.hpp"
#include "ncmax/grid.hpp"
#include "ncmax/verify.hpp"

#include <benchmark/benchmark.h>

using namespace ncmax;

namespace {

void BM_solve_dominant(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  int n = static_cast<int>(state.range(1));
  double p = static_cast<double>(state.range(2));
  OperatorSequence seq = random_positive_sequence(17, d, n, 1.0);
  for (auto _ : state) {
    DominantSolution sol = solve_dominant_general(seq, p);
    benchmark::DoNotOptimize(sol.primal_value);
  }
}
BENCHMARK(BM_solve_dominant)
    ->Args({2, 2, 1})
    ->Args({2, 2, 2})
    ->Args({2, 2, 3})
    ->Args({3, 4, 1})
    ->Args({3, 4, 2})
    ->Args({3, 4, 3});

void BM_solve_dominant_inf(benchmark::State& state) {
  OperatorSequence seq = random_positive_sequence(17, 3, 4, 1.0);
  for (auto _ : state) {
    DominantSolution sol = solve_dominant_inf(seq);
    benchmark::DoNotOptimize(sol.primal_value);
  }
}
BENCHMARK(BM_solve_dominant_inf);

void BM_avg_apply(benchmark::State& state) {
  int L = static_cast<int>(state.range(0));
  int n = static_cast<int>(state.range(1));
  GridFunction f = random_grid_function(23, 2, L);
  for (auto _ : state) {
    GridFunction t = avg_apply(f, DyadicLevel{n});
    benchmark::DoNotOptimize(t.values.back());
  }
}
BENCHMARK(BM_avg_apply)->Args({64, 0})->Args({64, 3})->Args({512, 3})->Args({512, 6});

void BM_schatten_norm(benchmark::State& state) {
  OperatorSequence seq = random_positive_sequence(29, 3, 1, 1.0);
  double p = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(schatten_norm(seq.items[0].mat(), p));
}
BENCHMARK(BM_schatten_norm)->Arg(1)->Arg(2)->Arg(3);

void BM_oracle(benchmark::State& state) {
  OperatorSequence seq = random_positive_sequence(31, 2, 2, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_oracle(seq, 2.0, 1e-3));
}
BENCHMARK(BM_oracle);

}  // namespace

BENCHMARK_MAIN();
