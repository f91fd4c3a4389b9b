#include <benchmark/benchmark.h>

#include "sntd/admm.hpp"
#include "sntd/hosvd.hpp"
#include "sntd/noise.hpp"
#include "sntd/rng.hpp"
#include "sntd/synthetic.hpp"

using namespace sntd;

namespace {

SyntheticData cube(std::size_t n, std::size_t r) {
  SyntheticSpec s;
  s.dims = {n, n, n};
  s.ranks = RankVector{r, r, r};
  s.sparsity = {0.3, 0.3, 0.3};
  s.scales = {1, 1, 1};
  s.seed = 1;
  return generate_synthetic(s);
}

struct Problem {
  ObservationSet obs;
  AdmmConfig config;
  TuckerModel init;
};

Problem problem(std::size_t n, std::size_t r) {
  const auto data = cube(n, r);
  Problem p;
  p.obs = observe(data.xstar, bernoulli_mask(data.xstar.shape(), 0.5, 2), NoiseModel::gaussian(0.01), 3);
  p.config = AdmmConfig::uniform(RankVector{r, r, r}, 10.0, 250.0, 0.01, 0.01, data.model.entry_bound);
  p.init = st_hosvd(zero_filled(p.obs), p.config.ranks);
  return p;
}

void BM_ModeProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  DenseTensor x(Shape{n, n, n});
  for (auto& v : x.values()) v = rng.uniform();
  Matrix a(8, n);
  for (auto& v : a.values()) v = rng.uniform();
  for (auto _ : state) benchmark::DoNotOptimize(mode_product(x, a, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_ModeProduct)->Arg(30)->Arg(60)->Arg(100);

void BM_UpdateCore(benchmark::State& state) {
  auto p = problem(static_cast<std::size_t>(state.range(0)), 5);
  const auto st = initial_state(p.obs, p.init, p.config);
  for (auto _ : state) benchmark::DoNotOptimize(update_core(st, p.config));
}
BENCHMARK(BM_UpdateCore)->Arg(30)->Arg(60);

void BM_SolveIteration(benchmark::State& state) {
  auto p = problem(static_cast<std::size_t>(state.range(0)), 3);
  p.config.max_iters = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve(p.obs, p.config, p.init));
}
BENCHMARK(BM_SolveIteration)->Arg(30)->Arg(60);

}  // namespace
BENCHMARK_MAIN();
