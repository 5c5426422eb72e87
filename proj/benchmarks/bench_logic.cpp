#include <benchmark/benchmark.h>

#include "ctfrec/logic/parser.hpp"
#include "ctfrec/logic/printer.hpp"

namespace {

const char* kTheory = R"(
sort player; sort cell; sort time;
pred snap(player, cell, time) hidden;
pred adjacent(cell, cell) observed;
func d1(player, cell, time);
func d2(player, cell, cell, time);
weight w_p = -0.25;
weight w_s = -1.5;
H1: hard exists1 c : snap(a, c, t);
S1: soft w_p snap(a, c, t) * d1(a, c, t);
S2: soft w_s snap(a, c1, t) & snap(a, c2, t+1) * d2(a, c1, c2, t);
)";

void BM_ParseTheory(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctfrec::logic::parse_theory(kTheory));
  }
}
BENCHMARK(BM_ParseTheory);

void BM_PrintTheory(benchmark::State& state) {
  const auto th = ctfrec::logic::parse_theory(kTheory);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctfrec::logic::print_theory(th));
  }
}
BENCHMARK(BM_PrintTheory);

}  // namespace
