#include "pipelife/experiment.hpp"

#include <fmt/format.h>

#include <cmath>
#include <future>
#include <numeric>

#include "pipelife/csv.hpp"
#include "pipelife/error.hpp"

namespace pipelife::mlp {

std::vector<MlpConfig> default_registry(std::uint64_t seed) {
  const std::vector<Feature> with_wtl = {Feature::Material, Feature::WallThicknessLoss, Feature::Length,
                                         Feature::Diameter, Feature::Age};
  const std::vector<Feature> without_wtl = {Feature::Material, Feature::Length, Feature::Diameter, Feature::Age};
  struct Entry {
    int hidden;
    bool wtl;
  };
  constexpr Entry kEntries[] = {{3, true}, {4, true}, {5, true}, {6, true},
                                {7, true}, {10, true}, {5, false}, {7, false}};
  std::vector<MlpConfig> out;
  int k = 1;
  for (const auto& e : kEntries) {
    MlpConfig c;
    c.name = fmt::format("ANN{}", k++);
    c.inputs = e.wtl ? with_wtl : without_wtl;
    c.hidden_neurons = e.hidden;
    c.seed = seed;
    out.push_back(std::move(c));
  }
  return out;
}

const MetricsReport& ExperimentResult::metrics(std::size_t model, std::string_view phase) const {
  const auto& name = models.at(model).config.name;
  for (const auto& row : rows) {
    if (row.model == name && row.phase == phase) return row.metrics;
  }
  throw Error(ErrorCode::EmptySplit, fmt::format("no {} metrics for {}", phase, name));
}

std::string ExperimentResult::to_csv() const {
  std::string out = "model,phase,mae,rrse,mape,rae,r2\n";
  for (const auto& row : rows) {
    const auto& m = row.metrics;
    out += fmt::format("{},{},{},{},{},{},{}\n", row.model, row.phase, format_number(m.mae), format_number(m.rrse),
                       format_number(m.mape), format_number(m.rae), format_number(m.r2));
  }
  return out;
}

ScatterData scatter_data(const MlpModel& model, const Dataset& data, SplitLabel phase) {
  ScatterData s;
  for (std::size_t i : indices_with_label(data, phase)) {
    const auto& rec = data.records[i];
    if (!rec.rul) continue;
    s.actual.push_back(*rec.rul);
    s.predicted.push_back(predict(model, rec));
  }
  return s;
}

namespace {

ScatterData all_rows(const MlpModel& model, const Dataset& data) {
  ScatterData s;
  for (const auto& rec : data.records) {
    s.actual.push_back(*rec.rul);
    s.predicted.push_back(predict(model, rec));
  }
  return s;
}

}  // namespace

ExperimentResult run_experiment_suite(const Dataset& data, const std::vector<MlpConfig>& registry) {
  if (registry.empty()) throw Error(ErrorCode::InvalidConfig, "empty model registry");
  if (!data.has_targets()) throw Error(ErrorCode::MissingTarget, "experiments need RUL on every record");
  for (const auto& c : registry) c.validate();

  std::vector<std::future<MlpModel>> jobs;
  jobs.reserve(registry.size());
  for (const auto& config : registry) {
    jobs.push_back(std::async(std::launch::async, [&data, config] {
      const auto fm = build_features(data, config.inputs, NormalizationMode::MinMax);
      return train(config, fm).model;
    }));
  }
  ExperimentResult result;
  for (auto& job : jobs) result.models.push_back(job.get());

  constexpr std::pair<SplitLabel, std::string_view> kPhases[] = {
      {SplitLabel::Train, "train"}, {SplitLabel::Validation, "validation"}, {SplitLabel::Test, "test"}};
  double best_mape = INFINITY;
  double best_mae = INFINITY;
  for (std::size_t k = 0; k < result.models.size(); ++k) {
    const auto& model = result.models[k];
    bool has_test = false;
    for (const auto& [label, phase] : kPhases) {
      const auto s = scatter_data(model, data, label);
      if (s.actual.size() < 2) continue;
      result.rows.push_back({model.config.name, std::string(phase), evaluate(s.predicted, s.actual)});
      if (label == SplitLabel::Test) has_test = true;
    }
    const auto everything = all_rows(model, data);
    result.rows.push_back({model.config.name, "all", evaluate(everything.predicted, everything.actual)});

    const auto& score = has_test ? result.metrics(k, "test") : result.rows.back().metrics;
    if (score.mape < best_mape || (score.mape == best_mape && score.mae < best_mae)) {
      best_mape = score.mape;
      best_mae = score.mae;
      result.best = k;
    }
  }
  return result;
}

ScatterFit scatter_fit(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) throw Error(ErrorCode::LengthMismatch, "scatter series differ in length");
  if (actual.size() < 2) throw Error(ErrorCode::TooShort, "scatter fit needs at least two points");
  const double n = static_cast<double>(actual.size());
  const double mx = std::accumulate(actual.begin(), actual.end(), 0.0) / n;
  const double my = std::accumulate(predicted.begin(), predicted.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    sxx += (actual[i] - mx) * (actual[i] - mx);
    sxy += (actual[i] - mx) * (predicted[i] - my);
    syy += (predicted[i] - my) * (predicted[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::ConstantSeries, "actual values are constant");
  ScatterFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace pipelife::mlp
