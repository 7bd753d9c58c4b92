#include <benchmark/benchmark.h>

#include "rnlab/certifier.hpp"
#include "rnlab/hensel.hpp"
#include "rnlab/pade.hpp"
#include "rnlab/pade_bounds.hpp"
#include "rnlab/quadring.hpp"
#include "rnlab/survey.hpp"

using namespace rnlab;

static void BM_QuadPow(benchmark::State& state) {
  const QuadInt beta = QuadInt::integral(1015, 1, 76);
  for (auto _ : state) benchmark::DoNotOptimize(pow(beta, static_cast<unsigned long>(state.range(0))));
}
BENCHMARK(BM_QuadPow)->Arg(250)->Arg(1000)->Arg(4000);

static void BM_BuildDiagonal(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_diagonal(static_cast<unsigned>(state.range(0)), 0));
}
BENCHMARK(BM_BuildDiagonal)->Arg(8)->Arg(51)->Arg(120);

static void BM_Normalize(benchmark::State& state) {
  const PadeSystem s = build_diagonal(static_cast<unsigned>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(normalize(s));
}
BENCHMARK(BM_Normalize)->Arg(51)->Arg(120);

static void BM_EvalAtZ0(benchmark::State& state) {
  const PadeSystem s = normalize(build_diagonal(static_cast<unsigned>(state.range(0)), 0));
  const QuadInt beta = QuadInt::integral(1015, 1, 76);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_scaled(s, beta));
}
BENCHMARK(BM_EvalAtZ0)->Arg(5)->Arg(55);

static void BM_HenselLift(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(roots_mod_pn(76, 101, static_cast<unsigned long>(state.range(0))));
}
BENCHMARK(BM_HenselLift)->Arg(100)->Arg(750)->Unit(benchmark::kMillisecond);

static void BM_PowerCompareExact(benchmark::State& state) {
  const Int x = ipow(Int(101), 750) - 12345;
  const Int m = ipow(Int(101), 675);
  for (auto _ : state) benchmark::DoNotOptimize(power_compare(m, x, 9, 10));
}
BENCHMARK(BM_PowerCompareExact);

static void BM_Survey(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_survey(76, 101, Rational(7, 50), static_cast<unsigned long>(state.range(0))));
  }
}
BENCHMARK(BM_Survey)->Arg(100)->Arg(750)->Unit(benchmark::kMillisecond);

static void BM_Certify(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify(76, 101, 1015, 3, Rational(1, 10), Variant::FiveJ));
  }
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMillisecond);

static void BM_Kernel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernel_extrema(Rational(953, 1000)));
}
BENCHMARK(BM_Kernel)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
