// Parallel sparse kernels against the serial dense reference implementations.
#include <benchmark/benchmark.h>

#include "crys/barstack/bar.hpp"
#include "crys/homology/homology.hpp"
#include "crys/homology/kernels.hpp"
#include "crys/homology/smith.hpp"
#include "crys/specseq/cosimplicial.hpp"
#include "crys/stackcoh/stack_cohomology.hpp"

using namespace crys;

namespace {

const FinAbGroup &bench_group(int which) {
  static const FinAbGroup groups[] = {FinAbGroup::from_orders({2, 2}), FinAbGroup::from_orders({2, 4}),
                                      FinAbGroup::from_orders({3, 3})};
  return groups[which];
}

const ChainComplex &bar(int which) {
  static std::map<int, ChainComplex> cache;
  auto it = cache.find(which);
  if (it == cache.end())
    it = cache.emplace(which, bar_complex(bench_group(which), 4, {.normalized = true})).first;
  return it->second;
}

void BM_InvariantFactorsSparse(benchmark::State &s) {
  const auto &m = bar(static_cast<int>(s.range(0))).outgoing(3);
  for (auto _ : s)
    benchmark::DoNotOptimize(invariant_factors(m));
}

void BM_InvariantFactorsDenseReference(benchmark::State &s) {
  const auto m = bar(static_cast<int>(s.range(0))).outgoing(3).to_dense();
  for (auto _ : s)
    benchmark::DoNotOptimize(smith_invariant_factors(m));
}

void BM_Homology(benchmark::State &s) {
  const auto &c = bar(static_cast<int>(s.range(0)));
  for (auto _ : s)
    benchmark::DoNotOptimize(homology(c));
}

void BM_HomologyReference(benchmark::State &s) {
  const auto &c = bar(static_cast<int>(s.range(0)));
  for (auto _ : s)
    benchmark::DoNotOptimize(homology_reference(c));
}

const ChainComplex &cochains() {
  static const auto c = alternating_face_complex(CosimplicialModule::group_cochains(FinAbGroup::cyclic(4), 4));
  return c;
}

void BM_ReductionTower(benchmark::State &s) {
  for (auto _ : s)
    benchmark::DoNotOptimize(reduction_tower(cochains(), 2, 2, static_cast<int>(s.range(0))));
}

void BM_ReductionTowerReference(benchmark::State &s) {
  for (auto _ : s)
    benchmark::DoNotOptimize(reduction_tower_reference(cochains(), 2, 2, static_cast<int>(s.range(0))));
}

} // namespace

BENCHMARK(BM_InvariantFactorsSparse)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InvariantFactorsDenseReference)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Homology)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomologyReference)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReductionTower)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReductionTowerReference)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
