#include <benchmark/benchmark.h>

#include "nahmforge/nahm.hpp"
#include "nahmforge/pochhammer.hpp"
#include "nahmforge/product.hpp"

namespace {

using namespace nahmforge;

void BM_SeriesMul(benchmark::State& state) {
  const Rat prec(static_cast<std::int64_t>(state.range(0)));
  QSeries a = pochhammer_inf(Monomial{Rat(1), Rat(1)}, Rat(1), prec);
  QSeries b = inv_pochhammer_inf(Monomial{Rat(1), Rat(2)}, Rat(2), prec);
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
}
BENCHMARK(BM_SeriesMul)->Arg(100)->Arg(400);

void BM_PochhammerInf(benchmark::State& state) {
  const Rat prec(static_cast<std::int64_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        pochhammer_inf(Monomial{Rat(1), Rat(1)}, Rat(1), prec));
}
BENCHMARK(BM_PochhammerInf)->Arg(100)->Arg(400);

void BM_NahmRank2(benchmark::State& state) {
  const Rat prec(static_cast<std::int64_t>(state.range(0)));
  NahmTriple t;
  t.A = RatMatrix({{Rat(2), Rat(1)}, {Rat(1), Rat(2)}});
  t.B = {Rat(0), Rat(0)};
  for (auto _ : state) benchmark::DoNotOptimize(nahm_sum(t, false, prec));
}
BENCHMARK(BM_NahmRank2)->Arg(40)->Arg(80);

void BM_NahmRank4(benchmark::State& state) {
  const Rat prec(static_cast<std::int64_t>(state.range(0)));
  NahmTriple t;
  t.A = RatMatrix({{Rat(2), Rat(-1), Rat(-1), Rat(-1)},
                   {Rat(-1), Rat(2), Rat(1), Rat(1)},
                   {Rat(-1), Rat(1), Rat(2), Rat(0)},
                   {Rat(-1), Rat(1), Rat(0), Rat(2)}});
  t.B = {Rat(0), Rat(0), Rat(0), Rat(0)};
  for (auto _ : state) benchmark::DoNotOptimize(nahm_sum(t, false, prec));
}
BENCHMARK(BM_NahmRank4)->Arg(20)->Arg(40);

void BM_ProductEval(benchmark::State& state) {
  const Rat prec(static_cast<std::int64_t>(state.range(0)));
  ProductExpr e = parse_product("J[4]^5*J[12]^2*J[4,24]/(J[2]^4*J[8]^2*J[24]*J[2,12])");
  for (auto _ : state) benchmark::DoNotOptimize(eval_product(e, prec));
}
BENCHMARK(BM_ProductEval)->Arg(60)->Arg(120);

}  // namespace

BENCHMARK_MAIN();
