#include <benchmark/benchmark.h>

#include "nklat/lattice_expr.hpp"
#include "nklat/verify.hpp"

using namespace nklat;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_ShortVectorsE8(benchmark::State& s) {
  const Lattice e8 = build_named("E8");
  for (auto _ : s) benchmark::DoNotOptimize(short_vectors_upto(e8, Int(6), exec_of(s)));
}

void BM_ShortVectorsD10(benchmark::State& s) {
  const Lattice l = build_named("D10(2)+E8");
  for (auto _ : s) benchmark::DoNotOptimize(short_vectors_upto(l, Int(4), exec_of(s)));
}

void BM_ReflectionGroup(benchmark::State& s) {
  const TorsionQuadModule d = TorsionQuadModule::discriminant_form(*standard_lambda().lattice());
  const auto mode = s.range(0) ? FiniteIsometryGroup::Mode::Parallel : FiniteIsometryGroup::Mode::Serial;
  for (auto _ : s) benchmark::DoNotOptimize(full_reflection_group(d, mode).order());
}

void BM_WallScanE8(benchmark::State& s) {
  const auto& m = standard_lambda();
  IntMatrix b(8, 16);
  for (std::size_t i = 0; i < 8; ++i) b(i, 6 + i) = 1;
  for (auto _ : s) benchmark::DoNotOptimize(sublattice_wall_scan(m, b, false, exec_of(s)));
}

}  // namespace

BENCHMARK(BM_ShortVectorsE8)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShortVectorsD10)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReflectionGroup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WallScanE8)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
