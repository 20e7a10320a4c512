#include <benchmark/benchmark.h>

#include "pipelife/anfis.hpp"
#include "pipelife/deterioration.hpp"
#include "pipelife/mlp.hpp"
#include "pipelife/stats.hpp"
#include "pipelife/synth.hpp"

namespace {

using namespace pipelife;

const Dataset& inventory() {
  static const Dataset d = split_dataset(synth::generate(synth::GeneratorConfig{}), SplitRatios{}, 42);
  return d;
}

void BM_Generate(benchmark::State& state) {
  synth::GeneratorConfig g;
  g.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(synth::generate(g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(1000)->Arg(5000);

void BM_SignificanceReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(stats::significance_report(inventory()));
}
BENCHMARK(BM_SignificanceReport);

void BM_MlpLossAndGradient(benchmark::State& state) {
  mlp::MlpConfig c;
  c.inputs = {Feature::Material, Feature::WallThicknessLoss, Feature::Length, Feature::Diameter, Feature::Age};
  c.hidden_neurons = static_cast<int>(state.range(0));
  const auto m = mlp::init(c);
  const auto fm = build_features(inventory(), c.inputs);
  for (auto _ : state) benchmark::DoNotOptimize(mlp::loss_and_gradient(m, fm.x, fm.y));
}
BENCHMARK(BM_MlpLossAndGradient)->Arg(5)->Arg(10);

void BM_MlpTrain(benchmark::State& state) {
  mlp::MlpConfig c;
  c.inputs = {Feature::Material, Feature::WallThicknessLoss, Feature::Age};
  c.epochs = 20;
  const auto fm = build_features(inventory(), c.inputs);
  for (auto _ : state) benchmark::DoNotOptimize(mlp::train(c, fm));
}
BENCHMARK(BM_MlpTrain)->Unit(benchmark::kMillisecond);

void BM_AnfisHybridEpoch(benchmark::State& state) {
  const std::vector<Feature> inputs = {Feature::Age, Feature::WallThicknessLoss, Feature::Material};
  const auto fm = build_features(inventory(), inputs);
  const auto start = anfis::init_grid(inputs, static_cast<int>(state.range(0)), fm);
  for (auto _ : state) benchmark::DoNotOptimize(anfis::hybrid_train(start, fm, 1, 0.05));
}
BENCHMARK(BM_AnfisHybridEpoch)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_FitPolynomial(benchmark::State& state) {
  std::vector<regression::Observation> obs;
  for (const auto& r : inventory().records) obs.push_back({double(r.age), r.wall_thickness_loss, *r.rul});
  for (auto _ : state) benchmark::DoNotOptimize(regression::fit_polynomial(obs, 3));
}
BENCHMARK(BM_FitPolynomial);

}  // namespace

BENCHMARK_MAIN();
