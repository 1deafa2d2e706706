#include <benchmark/benchmark.h>

#include "bfz/diagram.hpp"
#include "bfz/formal.hpp"
#include "bfz/sign.hpp"
#include "bfz/structures.hpp"

using namespace bfz;

static void BM_EnumerateClosed(benchmark::State& state) {
  for (auto _ : state) {
    FlowUniverse u(Flavor::Closed, state.range(0));
    benchmark::DoNotOptimize(u.flow_count());
  }
}
BENCHMARK(BM_EnumerateClosed)->DenseRange(1, 4);

static void BM_SolveClosed(benchmark::State& state) {
  FlowUniverse u(Flavor::Closed, state.range(0));
  for (auto _ : state) {
    auto s = solve_closed(u);
    benchmark::DoNotOptimize(s.val.data());
  }
}
BENCHMARK(BM_SolveClosed)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_ValidateClosed(benchmark::State& state) {
  FlowUniverse u(Flavor::Closed, state.range(0));
  auto s = solve_closed(u);
  for (auto _ : state) {
    auto rep = validate(s);
    benchmark::DoNotOptimize(rep.ok);
  }
}
BENCHMARK(BM_ValidateClosed)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_ConstructTypeA(benchmark::State& state) {
  FlowUniverse u(Flavor::Right, state.range(0), *SignSeq::parse("++"));
  for (auto _ : state) {
    auto s = construct_typeA(u);
    benchmark::DoNotOptimize(s.val.data());
  }
}
BENCHMARK(BM_ConstructTypeA)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

static void BM_PairBuiltins(benchmark::State& state) {
  SignSeq p = *SignSeq::parse("++");
  auto ha = builtin_diagram("Hinf", p);
  auto hd = builtin_diagram("Hm1", p);
  FlowUniverse ru(Flavor::Right, 1, ha.p_typeA());
  FlowUniverse lu(Flavor::Left, 1, hd.p);
  FlowUniverse cu(Flavor::Closed, 2);
  auto sa = construct_typeA(ru);
  for (auto _ : state) {
    auto sd = compatible_partner(sa, lu, cu);
    auto box = box_tensor(build_CFA(ha, sa), build_CFD(hd, sd));
    benchmark::DoNotOptimize(homology(box).h[0].free_rank);
  }
}
BENCHMARK(BM_PairBuiltins)->Unit(benchmark::kMillisecond);

static void BM_ExtendPairing(benchmark::State& state) {
  SignSeq p = *SignSeq::parse("++");
  const int m = state.range(0), n = state.range(1);
  FlowUniverse ru(Flavor::Right, m, p);
  FlowUniverse lu(Flavor::Left, n, p);
  FlowUniverse cu(Flavor::Closed, m + n);
  auto sa = construct_typeA(ru);
  auto sd = compatible_partner(sa, lu, cu);
  for (auto _ : state) {
    auto ext = extend_pairing(sa, sd, cu);
    benchmark::DoNotOptimize(ext->closed.val.data());
  }
}
BENCHMARK(BM_ExtendPairing)->Args({1, 1})->Args({1, 2})->Args({2, 2})->Unit(benchmark::kMillisecond);

static void BM_Triangle(benchmark::State& state) {
  SignSeq p = *SignSeq::parse("++");
  for (auto _ : state) {
    auto rep = triangle_obstruction(p, ClassLabel{+1, +1});
    benchmark::DoNotOptimize(rep.exact_tuples.size());
  }
}
BENCHMARK(BM_Triangle)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
