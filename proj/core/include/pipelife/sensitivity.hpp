#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pipelife/anfis.hpp"
#include "pipelife/features.hpp"
#include "pipelife/mlp.hpp"

namespace pipelife {

/// Normalized-space model output for one normalized input row.
using ModelFn = std::function<double(std::span<const double>)>;

struct FeatureSlope {
  Feature feature = Feature::Age;
  double slope = 0.0;  // mean |dy/dx| over the data rows
};

/// Mean absolute central-difference slope per input, h = 1% of the column's
/// observed range (unit step for constant columns), sorted by slope
/// descending; ties keep column order. Throws Error{EmptyDataset}.
[[nodiscard]] std::vector<FeatureSlope> sensitivity_ranking(const ModelFn& model,
                                                            const FeatureMatrix& data);

/// Throws Error{UntrainedModel} for a model that has not been trained.
[[nodiscard]] std::vector<FeatureSlope> sensitivity_ranking(const anfis::AnfisModel& model,
                                                            const FeatureMatrix& data);
[[nodiscard]] std::vector<FeatureSlope> sensitivity_ranking(const mlp::MlpModel& model,
                                                            const FeatureMatrix& data);

struct ContourPoint {
  double x1 = 0.0;  // raw units
  double x2 = 0.0;
  double y = 0.0;   // raw target units
};

/// Output surface over two inputs on a resolution x resolution grid spanning
/// their observed ranges; every other input is held at its median.
[[nodiscard]] std::vector<ContourPoint> contour_grid(const ModelFn& model, const FeatureMatrix& data,
                                                     Eigen::Index first, Eigen::Index second,
                                                     int resolution = 25);

}  // namespace pipelife
