// Serial reference vs OpenMP path on the heavier property suites.
// Run: build/bench/torofree_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "torofree/verify.hpp"

using namespace torofree;

namespace {

const ModuleSpec& sl3_full() {
  static const ModuleSpec s = make_spec(AlgebraDesc{Family::A, 2, 1, Variant::Full, 2, -3}, {frac(-1, 2)}, 5,
                                        {1, -3}, "1/3", {2});
  return s;
}

const ModuleSpec& sp4_toroidal() {
  static const ModuleSpec s =
      make_spec(AlgebraDesc{Family::C, 2, 1, Variant::Toroidal, 0, 0}, {2}, std::nullopt, {1, frac(1, 2)}, "0", {1});
  return s;
}

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_BracketCompat(benchmark::State& st, const ModuleSpec& (*spec)()) {
  VerifyOptions opt;
  opt.window = {-1, 1};
  opt.samples = 4;
  opt.exec = exec_of(st);
  const ActionOracle M = make_oracle(spec());
  for (auto _ : st) benchmark::DoNotOptimize(bracket_compat_check(M, opt).cases);
}

void BM_Jacobi(benchmark::State& st) {
  VerifyOptions opt;
  opt.window = {-1, 1};
  opt.samples = 0;
  opt.exec = exec_of(st);
  const AlgebraDesc A{Family::A, 1, 2, Variant::Full, 1, 1};
  for (auto _ : st) benchmark::DoNotOptimize(jacobi_check(A, opt).cases);
}

void BM_ShiftDifferences(benchmark::State& st) {
  VerifyOptions opt;
  opt.samples = 100;
  opt.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(lemma_pa_property(Ranks{3, 1}, opt).cases);
}

}  // namespace

// arg 0 = serial reference, 1 = parallel
BENCHMARK_CAPTURE(BM_BracketCompat, sl3_full, sl3_full)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BracketCompat, sp4_toroidal, sp4_toroidal)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Jacobi)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShiftDifferences)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
