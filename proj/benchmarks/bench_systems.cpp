#include "benchmark/benchmark.h"
#include "zslab/generators.hpp"

using namespace zslab;

namespace {

std::shared_ptr<const SelfSimilarAction> swap_action() {
  auto graph = KGraph::from_graph({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}});
  auto z2 = make_cyclic_group(2);
  Elem g = Elem::index(1);
  return std::make_shared<SelfSimilarAction>(
      graph, z2, std::map<std::pair<Elem, int>, int>{{{g, 0}, 0}},
      std::map<std::pair<Elem, int>, std::pair<int, Elem>>{{{g, 0}, {1, g}},
                                                           {{g, 1}, {0, g}}});
}

void BM_BuildBowtie(benchmark::State& state) {
  ZSSystem sys =
      selfsimilar_beta(swap_action(), static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    BowtieSystem y = build_bowtie(sys, /*assume_valid=*/true);
    benchmark::DoNotOptimize(y.system->ball().size());
  }
}

void BM_ValidateBowtie(benchmark::State& state) {
  ZSSystem sys =
      selfsimilar_beta(swap_action(), static_cast<int>(state.range(0)), 1);
  BowtieSystem y = build_bowtie(sys, /*assume_valid=*/true);
  for (auto _ : state) {
    ViolationReport r = validate_product_system(*y.system);
    benchmark::DoNotOptimize(r.checked());
  }
}

void BM_BuildHomogeneousProduct(benchmark::State& state) {
  ZSSystem sys =
      selfsimilar_beta(swap_action(), static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    TildeSystem z = build_tilde_bowtie(sys, /*assume_valid=*/true);
    benchmark::DoNotOptimize(z.system->ball().size());
  }
}

void BM_CompactAlignment(benchmark::State& state) {
  ZSSystem sys =
      selfsimilar_beta(swap_action(), static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    ViolationReport r = check_compactly_aligned(*sys.system);
    benchmark::DoNotOptimize(r.checked());
  }
}

}  // namespace

BENCHMARK(BM_BuildBowtie)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ValidateBowtie)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildHomogeneousProduct)->Arg(2)->Arg(3)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompactAlignment)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
