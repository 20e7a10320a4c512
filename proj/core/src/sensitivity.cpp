#include "pipelife/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include "pipelife/error.hpp"

namespace pipelife {

std::vector<FeatureSlope> sensitivity_ranking(const ModelFn& model, const FeatureMatrix& data) {
  if (data.rows() == 0) throw Error(ErrorCode::EmptyDataset, "sensitivity needs at least one row");
  const auto d = data.x.cols();
  std::vector<FeatureSlope> out;
  std::vector<double> row(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    const double range = data.x.col(j).maxCoeff() - data.x.col(j).minCoeff();
    const double h = range > 0.0 ? 0.01 * range : 1.0;
    double total = 0.0;
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      for (Eigen::Index k = 0; k < d; ++k) row[static_cast<std::size_t>(k)] = data.x(i, k);
      const double base = row[static_cast<std::size_t>(j)];
      row[static_cast<std::size_t>(j)] = base + h;
      const double up = model(row);
      row[static_cast<std::size_t>(j)] = base - h;
      const double down = model(row);
      total += std::abs(up - down) / (2.0 * h);
    }
    out.push_back({data.columns[static_cast<std::size_t>(j)], total / static_cast<double>(data.rows())});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.slope > b.slope; });
  return out;
}

std::vector<FeatureSlope> sensitivity_ranking(const anfis::AnfisModel& model, const FeatureMatrix& data) {
  if (!model.trained) throw Error(ErrorCode::UntrainedModel, "ANFIS model has not been trained");
  if (data.columns != model.rulebase.inputs) {
    throw Error(ErrorCode::DimensionMismatch, "feature matrix columns differ from the model inputs");
  }
  return sensitivity_ranking([&](std::span<const double> x) { return anfis::predict_normalized(model, x); }, data);
}

std::vector<FeatureSlope> sensitivity_ranking(const mlp::MlpModel& model, const FeatureMatrix& data) {
  if (!model.trained) throw Error(ErrorCode::UntrainedModel, "MLP has not been trained");
  if (data.columns != model.config.inputs) {
    throw Error(ErrorCode::DimensionMismatch, "feature matrix columns differ from the model inputs");
  }
  return sensitivity_ranking([&](std::span<const double> x) { return mlp::forward(model, x); }, data);
}

std::vector<ContourPoint> contour_grid(const ModelFn& model, const FeatureMatrix& data, Eigen::Index first,
                                       Eigen::Index second, int resolution) {
  if (data.rows() == 0) throw Error(ErrorCode::EmptyDataset, "contour needs at least one row");
  const auto d = data.x.cols();
  if (first < 0 || first >= d || second < 0 || second >= d || first == second) {
    throw Error(ErrorCode::DimensionMismatch, "contour inputs must be two distinct columns");
  }
  if (resolution < 2) throw Error(ErrorCode::InvalidConfig, "contour resolution must be >= 2");

  std::vector<double> base(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    std::vector<double> col(data.x.col(k).begin(), data.x.col(k).end());
    const auto mid = col.begin() + static_cast<std::ptrdiff_t>(col.size() / 2);
    std::nth_element(col.begin(), mid, col.end());
    base[static_cast<std::size_t>(k)] = *mid;
  }
  const Scaling target = data.target_scaling.value_or(Scaling::identity());
  const auto& s1 = data.scaling[static_cast<std::size_t>(first)];
  const auto& s2 = data.scaling[static_cast<std::size_t>(second)];
  const double lo1 = data.x.col(first).minCoeff();
  const double hi1 = data.x.col(first).maxCoeff();
  const double lo2 = data.x.col(second).minCoeff();
  const double hi2 = data.x.col(second).maxCoeff();

  std::vector<ContourPoint> out;
  out.reserve(static_cast<std::size_t>(resolution * resolution));
  std::vector<double> row = base;
  for (int a = 0; a < resolution; ++a) {
    const double u1 = lo1 + (hi1 - lo1) * a / (resolution - 1);
    for (int b = 0; b < resolution; ++b) {
      const double u2 = lo2 + (hi2 - lo2) * b / (resolution - 1);
      row[static_cast<std::size_t>(first)] = u1;
      row[static_cast<std::size_t>(second)] = u2;
      out.push_back({s1.denormalize(u1), s2.denormalize(u2), target.denormalize(model(row))});
    }
  }
  return out;
}

}  // namespace pipelife
