#include <benchmark/benchmark.h>

#include "kframe/douglas.hpp"
#include "kframe/frames.hpp"
#include "kframe/harness/instances.hpp"
#include "kframe/harness/suites.hpp"
#include "kframe/linalg.hpp"

namespace {

using namespace kframe;
using kframe::harness::Rng;

// Range arguments: k, n. J = 2n.

void BM_Pinv(benchmark::State& state) {
  const ModuleSpace s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  Rng rng(1);
  const Matrix a = rng.with_rank(s.dim(), s.dim(), s.dim() / 2 + 1);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::pinv(a, 1e-10));
}
BENCHMARK(BM_Pinv)->Args({1, 4})->Args({2, 4})->Args({3, 8});

void BM_KFrameCheck(benchmark::State& state) {
  const ModuleSpace s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  Rng rng(2);
  const harness::KFramePair p = harness::random_kframe(rng, s, 2 * s.n());
  for (auto _ : state) benchmark::DoNotOptimize(kframe_check(p.frame, p.K));
}
BENCHMARK(BM_KFrameCheck)->Args({1, 4})->Args({2, 4})->Args({3, 8});

void BM_DouglasFactorize(benchmark::State& state) {
  const ModuleSpace s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  Rng rng(3);
  const AdjointableOperator t(s, rng.with_rank(s.dim(), s.dim(), s.dim() / 2 + 1));
  const AdjointableOperator tp(s, rng.gaussian(s.dim(), s.dim()) * t.matrix());
  for (auto _ : state) benchmark::DoNotOptimize(douglas_factorize(tp, t));
}
BENCHMARK(BM_DouglasFactorize)->Args({1, 4})->Args({2, 4})->Args({3, 8});

void BM_SuiteTrial(benchmark::State& state) {
  const char* ids[] = {"douglas", "kframe", "kframe_sum", "unitary_generator"};
  const std::string id = ids[state.range(0)];
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(harness::run_suite(id, 1, seed++));
  state.SetLabel(id);
}
BENCHMARK(BM_SuiteTrial)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
