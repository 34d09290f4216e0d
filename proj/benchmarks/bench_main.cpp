#include <benchmark/benchmark.h>

#include "sfn/catalog.hpp"
#include "sfn/cyclotomic.hpp"
#include "sfn/ratfunc.hpp"
#include "sfn/verifier.hpp"

namespace {

void BM_AperyNumber(benchmark::State& state) {
  const auto n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sfn::apery_number(n));
}
BENCHMARK(BM_AperyNumber)->Arg(50)->Arg(200)->Arg(800);

void BM_CyclotomicMultiply(benchmark::State& state) {
  const auto m = static_cast<unsigned long>(state.range(0));
  sfn::CycElem a = sfn::CycElem::zeta(m) + sfn::CycElem(3L);
  sfn::CycElem b = a * a + sfn::CycElem(1L);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CyclotomicMultiply)->Arg(5)->Arg(12)->Arg(60);

void BM_Maclaurin(benchmark::State& state) {
  using sfn::CycElem;
  sfn::Poly<CycElem> num(std::vector<CycElem>{CycElem(0L), CycElem(1L)});
  sfn::Poly<CycElem> den(std::vector<CycElem>{CycElem(1L), CycElem(-1L), CycElem(0L), CycElem(1L)});
  sfn::RatFunc f(num, den);
  const auto t = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sfn::maclaurin(f, t));
}
BENCHMARK(BM_Maclaurin)->Arg(64)->Arg(256)->Arg(1024);

void BM_VerifyWindow(benchmark::State& state) {
  sfn::CatalogEntry seq = sfn::apery();
  const auto p = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sfn::check_local_s(seq, p, 3, 2, 2));
}
BENCHMARK(BM_VerifyWindow)->Arg(5)->Arg(11);

}  // namespace

BENCHMARK_MAIN();
