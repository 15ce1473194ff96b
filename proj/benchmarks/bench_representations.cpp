#include "benchmark/benchmark.h"
#include "zslab/representations.hpp"
#include "zslab/generators.hpp"

using namespace zslab;

namespace {

void BM_BuildFock(benchmark::State& state) {
  ZSSystem sys = trivial_system(odometer_zs(), static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    ToeplitzRep rep = build_fock_rep(sys.system, sys.system->ball().radius);
    benchmark::DoNotOptimize(rep.space_dim());
  }
}

void BM_ValidateToeplitz(benchmark::State& state) {
  ZSSystem sys = trivial_system(odometer_zs(), static_cast<int>(state.range(0)), 2);
  ToeplitzRep rep = build_fock_rep(sys.system, sys.system->ball().radius);
  for (auto _ : state) {
    ViolationReport r = validate_toeplitz(rep);
    benchmark::DoNotOptimize(r.checked());
  }
}

void BM_NicaEquivalence(benchmark::State& state) {
  ZSSystem sys = trivial_system(coordinate_swap_zs(), static_cast<int>(state.range(0)), 1);
  BowtieSystem y = build_bowtie(sys, /*assume_valid=*/true);
  ToeplitzRep psi = build_fock_rep(sys.system, sys.system->ball().radius);
  UnitaryRep u = build_fock_unitary(sys, sys.system->ball().radius);
  ToeplitzRep joint = to_joint_rep(psi, u, y, /*validate=*/false);
  CovariantPair pair = from_joint_rep(joint, y);
  for (auto _ : state) {
    ViolationReport r = check_nica_equivalence(joint, pair, y);
    benchmark::DoNotOptimize(r.checked());
  }
}

void BM_CpDefectSweep(benchmark::State& state) {
  ZSSystem sys = trivial_system(odometer_zs(), static_cast<int>(state.range(0)), 2);
  ToeplitzRep rep = build_fock_rep(sys.system, sys.system->ball().radius);
  for (auto _ : state) {
    double worst = 0.0;
    for (const Elem& p : sys.system->ball().elems) {
      worst = std::max(worst, cp_defect(rep, p));
    }
    benchmark::DoNotOptimize(worst);
  }
}

}  // namespace

BENCHMARK(BM_BuildFock)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ValidateToeplitz)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NicaEquivalence)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CpDefectSweep)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
