#include <benchmark/benchmark.h>

#include <vector>

#include "rankstream/aggregation.hpp"
#include "rankstream/mallows.hpp"
#include "rankstream/permutation.hpp"

namespace {

using namespace rankstream;

std::vector<Permutation> draws(std::size_t n, std::size_t count) {
  const MallowsModel model(Permutation::identity(n), 0.5);
  Rng rng(42);
  std::vector<Permutation> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(model.sample(rng));
  return out;
}

void BM_UBordaUpdate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sample = draws(n, 1024);
  UBordaState uborda(n, 0.9295);
  std::size_t k = 0;
  for (auto _ : state) {
    uborda.update(sample[k++ & 1023]);
    benchmark::DoNotOptimize(uborda.scores().data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_UBordaUpdate)->Arg(10)->Arg(100)->Arg(1000);

void BM_KendallDistance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sample = draws(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kendall_distance(sample[0], sample[1]));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallDistance)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNLogN);

void BM_MallowsSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const MallowsModel model(Permutation::reverse(n), 0.3);
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(model.sample(rng));
}
BENCHMARK(BM_MallowsSample)->Arg(7)->Arg(10)->Arg(100);

void BM_KemenyExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sample = draws(n, 25);
  std::vector<WeightedVote> votes;
  for (const auto& p : sample) votes.push_back({p, 1.0});
  const auto matrices = pairwise_matrices(votes);
  for (auto _ : state) benchmark::DoNotOptimize(kemeny_exact(matrices));
}
BENCHMARK(BM_KemenyExact)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
