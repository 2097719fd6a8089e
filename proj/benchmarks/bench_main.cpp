#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "daz/bp.hpp"
#include "daz/model.hpp"
#include "daz/prox.hpp"
#include "daz/rng.hpp"
#include "daz/samplers.hpp"
#include "daz/schedule.hpp"

namespace {

std::vector<double> noisy_steps(std::size_t n, std::uint64_t seed) {
  const daz::NormalStream normal(seed);
  std::vector<double> v(n);
  normal.fill(0, 0, v.data(), n);
  for (std::size_t i = 0; i < n; ++i) v[i] = ((i * 4 / n) % 2 == 0 ? 0.0 : 1.0) + 0.1 * v[i];
  return v;
}

daz::ModelSpec two_modes() {
  return daz::ModelSpec::gaussian_mixture({{-1.0, 0.5, 0.25}, {1.0, 0.5, 0.25}});
}

void BM_ProxTvChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto v = noisy_steps(n, 7);
  std::vector<double> out(n);
  for (auto _ : state) {
    daz::prox_tv_chain(v, 0.05, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProxTvChain)->RangeMultiplier(10)->Range(100, 100000);

void BM_ProxTvImage(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto v = noisy_steps(side * side, 11);
  for (auto _ : state) {
    auto out = daz::prox_tv_image(v, side, side, 0.05, 1e-8);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ProxTvImage)->Arg(16)->Arg(32)->Arg(64);

void BM_ScalarProxBuild(benchmark::State& state) {
  const auto model = two_modes();
  const double t = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    daz::ScalarProx prox(model, t);
    benchmark::DoNotOptimize(&prox);
  }
}
BENCHMARK(BM_ScalarProxBuild)->DenseRange(-3, 1);

void BM_ScalarProxPoint(benchmark::State& state) {
  const auto model = two_modes();
  const double t = std::pow(10.0, static_cast<double>(state.range(0)));
  const daz::ScalarProx prox(model, t);
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prox.point(x));
    x = x > 3.0 ? -3.0 : x + 0.0137;
  }
}
BENCHMARK(BM_ScalarProxPoint)->DenseRange(-3, 1);

void BM_DazLaplace(benchmark::State& state) {
  const auto model = daz::ModelSpec::laplace(1.0);
  const auto schedule = daz::make_schedule(1e-3, 0.3, 100, model, 1.0);
  const auto chains = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto run = daz::run_daz(model, schedule, chains, 2024);
    benchmark::DoNotOptimize(run.ensemble.states.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}
BENCHMARK(BM_DazLaplace)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_DazTvChain(benchmark::State& state) {
  const auto y = noisy_steps(100, 3);
  const auto model = daz::ModelSpec::tv_chain(y, 0.1, 30.0);
  const auto schedule = daz::make_schedule(1e-5, 1.0, 100, model, 1.0);
  for (auto _ : state) {
    auto run = daz::run_daz(model, schedule, 100, 2024);
    benchmark::DoNotOptimize(run.ensemble.states.data());
  }
  state.SetItemsProcessed(state.iterations() * 100 * 100);
}
BENCHMARK(BM_DazTvChain)->Unit(benchmark::kMillisecond);

void BM_ChainBp(benchmark::State& state) {
  const auto y = noisy_steps(100, 5);
  const auto model = daz::ModelSpec::tv_chain(y, 0.1, 30.0);
  const auto [lo, hi] = daz::default_label_range(model);
  const auto labels = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto table = daz::chain_bp_marginals(model, labels, lo, hi);
    benchmark::DoNotOptimize(&table);
  }
}
BENCHMARK(BM_ChainBp)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
