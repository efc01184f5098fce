#include <benchmark/benchmark.h>

#include "resonance/analytic.hpp"
#include "resonance/forms.hpp"
#include "resonance/predict.hpp"
#include "resonance/sums.hpp"

using namespace resonance;

static void BM_TauTable(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(forms::tau_table(n));
}
BENCHMARK(BM_TauTable)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Sym2Lift(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto g = forms::normalize_gl2(forms::tau_table(n));
  for (auto _ : state) benchmark::DoNotOptimize(forms::sym_lift_table(g, 3, n));
}
BENCHMARK(BM_Sym2Lift)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_ExpSum(benchmark::State& state) {
  static const auto table = forms::sym_lift_table(forms::normalize_gl2(forms::tau_table(200000)), 3, 200000);
  const double M = 1e5;
  const double Delta = static_cast<double>(state.range(0));
  sums::SumSpec spec{&table, M, Delta, 1, sums::Twist::linear, weights::make_bump(M, Delta)};
  for (auto _ : state) benchmark::DoNotOptimize(sums::exp_sum(spec, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExpSum)->Arg(1000)->Arg(10000)->Arg(90000);

static void BM_GeometricSum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sums::geometric_sum(state.range(0), 0.1234567));
}
BENCHMARK(BM_GeometricSum)->Arg(100000);

static void BM_MainTerm(benchmark::State& state) {
  const auto dual = forms::CoefficientTable::unit(3, 10);
  const double M = 1e6;
  const double Delta = 31622;
  const auto w = weights::make_bump(M, Delta);
  for (auto _ : state) benchmark::DoNotOptimize(predict::main_term_linear(dual, M, Delta, 1, 3, w));
}
BENCHMARK(BM_MainTerm)->Unit(benchmark::kMicrosecond);

static void BM_OmegaContour(benchmark::State& state) {
  const auto w = weights::make_bump(1.0, 1.0);
  const auto p = analytic::SpectralParams::zero(2);
  const double y = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(analytic::omega_contour(w, y, p));
}
BENCHMARK(BM_OmegaContour)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_ComplexLogGamma(benchmark::State& state) {
  analytic::cplx s(0.25, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic::complex_log_gamma(s));
    s += analytic::cplx(0.0, 0.5);
  }
}
BENCHMARK(BM_ComplexLogGamma);

BENCHMARK_MAIN();
