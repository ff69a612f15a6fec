#include <cmath>

#include <linksmooth/estimator.hpp>
#include <linksmooth/montecarlo.hpp>
#include <linksmooth/rates.hpp>

#include <benchmark/benchmark.h>

using namespace linksmooth;

namespace {

SmootherConfig config_for(std::size_t n) {
  SmootherConfig cfg;
  cfg.kernel = {KernelKind::kBoxcar, 1, false};
  cfg.h = bandwidth(n, 3.0, 1);
  cfg.lambda = 1.0 / static_cast<double>(n);
  cfg.query_x = {0.5};
  cfg.query_xp = {0.5};
  return cfg;
}

}  // namespace

static void BM_SampleOutcomes(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cov = generate(DesignSpec::random(n, 1), 1);
  const LinkModel model;
  LinkOutcomes y(n);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    sample_outcomes_into(model, cov, ++seed, y);
    benchmark::DoNotOptimize(y.packed().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * (n - 1) / 2));
}
BENCHMARK(BM_SampleOutcomes)->Arg(100)->Arg(500)->Arg(2000);

static void BM_LinkSmooth(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cov = generate(DesignSpec::random(n, 1), 1);
  const auto y = sample_outcomes(LinkModel{}, cov, 2);
  const LinkSmoother smoother(cov, config_for(n));
  for (auto _ : state) benchmark::DoNotOptimize(smoother(y));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * (n - 1) / 2));
}
BENCHMARK(BM_LinkSmooth)->Arg(100)->Arg(500)->Arg(2000);

static void BM_ConditionalMean(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cov = generate(DesignSpec::random(n, 1), 1);
  const LinkModel model;
  const auto cfg = config_for(n);
  for (auto _ : state) benchmark::DoNotOptimize(conditional_mean(cov, cfg, model));
}
BENCHMARK(BM_ConditionalMean)->Arg(100)->Arg(500);

static void BM_ConventionalSmooth(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cov = generate(DesignSpec::random(n, 1), 1);
  const auto y = sample_node_outcomes(NodeModel{}, cov, 3);
  const KernelSpec kernel{KernelKind::kBoxcar, 1, false};
  const std::vector<double> query{0.5};
  const double h = bandwidth(n, 1.0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(conventional_smooth(cov, y, kernel, h, 1.0 / std::sqrt(static_cast<double>(n)), query));
  }
}
BENCHMARK(BM_ConventionalSmooth)->Arg(5000);

static void BM_RandomDesignReplicates(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.design = DesignSpec::random(200, 1);
  cfg.smoother = config_for(200);
  cfg.rx = static_cast<std::size_t>(state.range(0));
  cfg.ry = 1;
  cfg.master_seed = 4;
  for (auto _ : state) benchmark::DoNotOptimize(run_replicates(cfg).values.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RandomDesignReplicates)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
