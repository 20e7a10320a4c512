#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pipelife/dataset.hpp"

namespace pipelife {

/// The seven inventory attributes usable as model inputs.
enum class Feature {
  Age,
  Diameter,
  Length,
  Material,
  Breaks,
  InstallYear,
  WallThicknessLoss,
};

inline constexpr std::array<Feature, 7> kAllFeatures = {
    Feature::Age,    Feature::Diameter,    Feature::Length,           Feature::Material,
    Feature::Breaks, Feature::InstallYear, Feature::WallThicknessLoss,
};

/// CSV column name of the feature ("age_years", ...).
[[nodiscard]] std::string_view feature_name(Feature f) noexcept;

/// Accepts the CSV column name or a short alias: age, diameter, length,
/// material, breaks, install_year, wtl. Throws Error{UnknownColumn}.
[[nodiscard]] Feature parse_feature(std::string_view name);
[[nodiscard]] std::vector<Feature> parse_feature_list(std::string_view comma_separated);

/// Raw numeric value of a feature; material is its EA score.
[[nodiscard]] double feature_value(const PipeRecord& rec, Feature f) noexcept;

enum class NormalizationMode { MinMax, ZScore };

/// Per-column affine scaling. MinMax stores (min, max); ZScore stores
/// (mean, std). A constant column under MinMax maps every value to 0.
struct Scaling {
  NormalizationMode mode = NormalizationMode::MinMax;
  double a = 0.0;
  double b = 1.0;

  [[nodiscard]] double normalize(double v) const noexcept;
  [[nodiscard]] double denormalize(double u) const noexcept;
  /// d(raw)/d(normalized).
  [[nodiscard]] double scale() const noexcept;

  [[nodiscard]] static Scaling identity() noexcept { return {NormalizationMode::MinMax, 0.0, 1.0}; }
  /// Throws Error{DegenerateColumn} for a zero-variance column in ZScore mode.
  [[nodiscard]] static Scaling fit(std::span<const double> column, NormalizationMode mode);
};

/// Normalized design matrix with the constants needed to map back.
struct FeatureMatrix {
  Eigen::MatrixXd x;               // rows = records, cols = features
  std::vector<Feature> columns;
  std::vector<Scaling> scaling;    // one per column
  Eigen::VectorXd y;               // normalized target, empty without targets
  std::optional<Scaling> target_scaling;
  std::vector<SplitLabel> split;   // copied from the dataset

  [[nodiscard]] Eigen::Index rows() const noexcept { return x.rows(); }
  [[nodiscard]] Eigen::Index cols() const noexcept { return x.cols(); }
  [[nodiscard]] bool has_targets() const noexcept { return y.size() == x.rows() && y.size() > 0; }

  /// Row indices labelled `label`. Without split labels every row is Train.
  [[nodiscard]] std::vector<Eigen::Index> rows_with(SplitLabel label) const;
  [[nodiscard]] Eigen::MatrixXd select_x(std::span<const Eigen::Index> rows) const;
  [[nodiscard]] Eigen::VectorXd select_y(std::span<const Eigen::Index> rows) const;
  [[nodiscard]] std::vector<std::string> column_names() const;
};

/// Builds the normalized matrix over `columns`, fitting fresh scaling
/// constants. The target is normalized with the same mode when every record
/// has one.
///
/// Errors: EmptyDataset, UnknownColumn (duplicate or empty selection),
/// DegenerateColumn.
[[nodiscard]] FeatureMatrix build_features(const Dataset& d, std::span<const Feature> columns,
                                           NormalizationMode mode = NormalizationMode::MinMax);

/// Applies previously fitted constants (e.g. those stored in a model) to new
/// records.
[[nodiscard]] FeatureMatrix apply_features(const Dataset& d, std::span<const Feature> columns,
                                           std::span<const Scaling> scaling,
                                           const std::optional<Scaling>& target_scaling);

}  // namespace pipelife
