#include "benchmark/benchmark.h"
#include "zslab/generators.hpp"

using namespace zslab;

namespace {

void BM_OdometerAxiomSweep(benchmark::State& state) {
  const int radius_p = static_cast<int>(state.range(0));
  auto zs = odometer_zs(radius_p, 2);
  Ball words = zs->P().ball(radius_p);
  Ball gs = zs->G().ball(3);
  for (auto _ : state) {
    // Fresh data each round so the memo tables are part of the cost.
    auto fresh = odometer_zs(1, 1);
    ViolationReport r = zs_axiom_check(*fresh, words, gs);
    benchmark::DoNotOptimize(r.checked());
  }
  state.SetLabel(std::to_string(words.size()) + " words x " +
                 std::to_string(gs.size()) + " group elements");
}

void BM_OdometerMemoized(benchmark::State& state) {
  const int radius_p = static_cast<int>(state.range(0));
  auto zs = odometer_zs(radius_p, 2);
  Ball words = zs->P().ball(radius_p);
  Ball gs = zs->G().ball(3);
  zs_axiom_check(*zs, words, gs);  // warm the memo tables
  for (auto _ : state) {
    ViolationReport r = zs_axiom_check(*zs, words, gs);
    benchmark::DoNotOptimize(r.checked());
  }
}

void BM_RightLcmAudit(benchmark::State& state) {
  auto fm = make_free_monoid("01");
  Ball ball = fm->ball(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ViolationReport r = check_right_lcm(*fm, ball);
    benchmark::DoNotOptimize(r.checked());
  }
}

}  // namespace

BENCHMARK(BM_OdometerAxiomSweep)->Arg(3)->Arg(4)->Arg(5)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OdometerMemoized)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RightLcmAudit)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
