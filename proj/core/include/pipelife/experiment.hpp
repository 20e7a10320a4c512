#pragma once

#include <string>
#include <vector>

#include "pipelife/dataset.hpp"
#include "pipelife/metrics.hpp"
#include "pipelife/mlp.hpp"

namespace pipelife::mlp {

/// ANN1..ANN8: hidden sizes {3,4,5,6,7,10} on material, WTL, length,
/// diameter and age, then hidden {5,7} without WTL.
[[nodiscard]] std::vector<MlpConfig> default_registry(std::uint64_t seed = 1);

struct PhaseMetrics {
  std::string model;
  std::string phase;  // "train", "validation", "test", "all"
  MetricsReport metrics;
};

struct ExperimentResult {
  std::vector<MlpModel> models;          // registry order
  std::vector<PhaseMetrics> rows;        // model-major, phase order above
  std::size_t best = 0;                  // lowest test MAPE, then MAE

  [[nodiscard]] const MetricsReport& metrics(std::size_t model, std::string_view phase) const;
  /// CSV with header model,phase,mae,rrse,mape,rae,r2.
  [[nodiscard]] std::string to_csv() const;
};

/// Trains every registry entry on the dataset's split (models are trained
/// concurrently; each run is seed-deterministic) and evaluates raw-unit RUL
/// metrics per phase. Phases without at least two rows are skipped.
///
/// Errors: InvalidConfig (empty registry), MissingTarget, EmptySplit.
[[nodiscard]] ExperimentResult run_experiment_suite(const Dataset& data,
                                                    const std::vector<MlpConfig>& registry);

struct ScatterFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares line of predicted on actual, with its R2.
/// Errors: LengthMismatch, TooShort, ConstantSeries (constant actual).
[[nodiscard]] ScatterFit scatter_fit(std::span<const double> predicted, std::span<const double> actual);

/// Raw-unit predictions and actuals of `model` on the rows labelled `phase`.
struct ScatterData {
  std::vector<double> actual;
  std::vector<double> predicted;
};
[[nodiscard]] ScatterData scatter_data(const MlpModel& model, const Dataset& data, SplitLabel phase);

}  // namespace pipelife::mlp
