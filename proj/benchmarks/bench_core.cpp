#include <benchmark/benchmark.h>

#include "ifs/chain.hpp"
#include "ifs/clt.hpp"
#include "ifs/measure.hpp"
#include "ifs/system.hpp"
#include "ifs/words.hpp"

namespace {

const ifs::IfsSystem& am2() {
  static const ifs::IfsSystem sys = ifs::IfsSystem::am2();
  return sys;
}

void BM_MapEval(benchmark::State& state) {
  const auto& f = am2().map(0);
  double x = 0.37;
  for (auto _ : state) {
    x = f.eval(x);
    benchmark::DoNotOptimize(x);
    if (x > 0.999) x = 0.37;  // keep off the fixed point
  }
}
BENCHMARK(BM_MapEval);

void BM_Trajectory(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t r = 0;
  for (auto _ : state) {
    const auto t = ifs::run_trajectory(am2(), 0.5, n, ifs::StreamSpec{1, r++});
    benchmark::DoNotOptimize(t.terminal());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Trajectory)->Arg(1000)->Arg(10000);

void BM_PathPhiSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ifs::ScalarFn phi = [](double x) { return x - 0.5; };
  std::uint64_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ifs::path_phi_sum(am2(), phi, 0.5, n, ifs::StreamSpec{1, r++}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_PathPhiSum)->Arg(1000)->Arg(10000);

void BM_DualExact(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ifs::dual_apply_exact(am2(), [](double x) { return x; }, n, 0.5));
  }
}
BENCHMARK(BM_DualExact)->Arg(8)->Arg(12)->Arg(16);

void BM_Wasserstein(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> a(n), b(n);
  ifs::SplitMix64 rng(ifs::StreamSpec{7, 0});
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = rng.next_unit();
    b[i] = rng.next_unit();
  }
  const auto ma = ifs::EmpiricalMeasure::from_points(a);
  const auto mb = ifs::EmpiricalMeasure::from_points(b);
  for (auto _ : state) benchmark::DoNotOptimize(ifs::wasserstein1(ma, mb));
}
BENCHMARK(BM_Wasserstein)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
