#include "pipelife/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "pipelife/error.hpp"

namespace pipelife {

std::string_view feature_name(Feature f) noexcept {
  switch (f) {
    case Feature::Age: return "age_years";
    case Feature::Diameter: return "diameter_in";
    case Feature::Length: return "length_ft";
    case Feature::Material: return "material";
    case Feature::Breaks: return "breaks";
    case Feature::InstallYear: return "install_year";
    case Feature::WallThicknessLoss: return "wall_thickness_loss_pct";
  }
  return "";
}

Feature parse_feature(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == ' ' || c == '\t') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (Feature f : kAllFeatures) {
    if (key == feature_name(f)) return f;
  }
  if (key == "age") return Feature::Age;
  if (key == "diameter") return Feature::Diameter;
  if (key == "length") return Feature::Length;
  if (key == "mat" || key == "ea") return Feature::Material;
  if (key == "installyear" || key == "install") return Feature::InstallYear;
  if (key == "wtl" || key == "wall_thickness_loss") return Feature::WallThicknessLoss;
  throw Error(ErrorCode::UnknownColumn, "unknown feature '" + std::string(name) + "'");
}

std::vector<Feature> parse_feature_list(std::string_view comma_separated) {
  std::vector<Feature> out;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    const auto end = comma_separated.find(',', start);
    const auto token = comma_separated.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (!token.empty()) out.push_back(parse_feature(token));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

double feature_value(const PipeRecord& rec, Feature f) noexcept {
  switch (f) {
    case Feature::Age: return rec.age;
    case Feature::Diameter: return rec.diameter;
    case Feature::Length: return rec.length;
    case Feature::Material: return rec.material.ea();
    case Feature::Breaks: return rec.breaks;
    case Feature::InstallYear: return rec.install_year;
    case Feature::WallThicknessLoss: return rec.wall_thickness_loss;
  }
  return 0.0;
}

double Scaling::normalize(double v) const noexcept {
  if (mode == NormalizationMode::MinMax) {
    return b > a ? (v - a) / (b - a) : 0.0;
  }
  return (v - a) / b;
}

double Scaling::denormalize(double u) const noexcept {
  if (mode == NormalizationMode::MinMax) {
    return b > a ? a + u * (b - a) : a;
  }
  return a + u * b;
}

double Scaling::scale() const noexcept {
  if (mode == NormalizationMode::MinMax) return b > a ? b - a : 0.0;
  return b;
}

Scaling Scaling::fit(std::span<const double> column, NormalizationMode mode) {
  if (column.empty()) throw Error(ErrorCode::EmptyDataset, "cannot fit scaling on an empty column");
  if (mode == NormalizationMode::MinMax) {
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    return {mode, *lo, *hi};
  }
  const double n = static_cast<double>(column.size());
  const double mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : column) ss += (v - mean) * (v - mean);
  const double sd = column.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateColumn, "zero-variance column under z-score scaling");
  return {mode, mean, sd};
}

std::vector<Eigen::Index> FeatureMatrix::rows_with(SplitLabel label) const {
  std::vector<Eigen::Index> out;
  if (split.empty()) {
    if (label == SplitLabel::Train) {
      out.resize(static_cast<std::size_t>(x.rows()));
      std::iota(out.begin(), out.end(), Eigen::Index{0});
    }
    return out;
  }
  for (std::size_t i = 0; i < split.size(); ++i) {
    if (split[i] == label) out.push_back(static_cast<Eigen::Index>(i));
  }
  return out;
}

Eigen::MatrixXd FeatureMatrix::select_x(std::span<const Eigen::Index> idx) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), x.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(idx[i]);
  return out;
}

Eigen::VectorXd FeatureMatrix::select_y(std::span<const Eigen::Index> idx) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out(static_cast<Eigen::Index>(i)) = y(idx[i]);
  return out;
}

std::vector<std::string> FeatureMatrix::column_names() const {
  std::vector<std::string> out;
  for (Feature f : columns) out.emplace_back(feature_name(f));
  return out;
}

namespace {

void check_columns(std::span<const Feature> columns) {
  if (columns.empty()) throw Error(ErrorCode::UnknownColumn, "empty feature selection");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    for (std::size_t j = i + 1; j < columns.size(); ++j) {
      if (columns[i] == columns[j]) {
        throw Error(ErrorCode::UnknownColumn, "duplicate feature '" + std::string(feature_name(columns[i])) + "'");
      }
    }
  }
}

std::vector<double> raw_column(const Dataset& d, Feature f) {
  std::vector<double> v(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) v[i] = feature_value(d.records[i], f);
  return v;
}

}  // namespace

FeatureMatrix build_features(const Dataset& d, std::span<const Feature> columns, NormalizationMode mode) {
  if (d.empty()) throw Error(ErrorCode::EmptyDataset, "cannot build features from an empty dataset");
  check_columns(columns);
  std::vector<Scaling> scaling;
  for (Feature f : columns) {
    try {
      scaling.push_back(Scaling::fit(raw_column(d, f), mode));
    } catch (const Error& e) {
      const std::string msg = e.what();
      const auto colon = msg.find(": ");
      throw Error(e.code(), std::string(feature_name(f)) + ": " + (colon == std::string::npos ? msg : msg.substr(colon + 2)));
    }
  }
  std::optional<Scaling> target;
  if (d.has_targets()) {
    std::vector<double> y(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) y[i] = *d.records[i].rul;
    target = Scaling::fit(y, mode);
  }
  return apply_features(d, columns, scaling, target);
}

FeatureMatrix apply_features(const Dataset& d, std::span<const Feature> columns,
                             std::span<const Scaling> scaling, const std::optional<Scaling>& target_scaling) {
  check_columns(columns);
  if (scaling.size() != columns.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one scaling entry is required per column");
  }
  FeatureMatrix fm;
  fm.columns.assign(columns.begin(), columns.end());
  fm.scaling.assign(scaling.begin(), scaling.end());
  fm.split = d.split;
  const auto n = static_cast<Eigen::Index>(d.size());
  fm.x.resize(n, static_cast<Eigen::Index>(columns.size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& rec = d.records[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < columns.size(); ++j) {
      fm.x(i, static_cast<Eigen::Index>(j)) = scaling[j].normalize(feature_value(rec, columns[j]));
    }
  }
  if (target_scaling && d.has_targets()) {
    fm.target_scaling = target_scaling;
    fm.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) fm.y(i) = target_scaling->normalize(*d.records[static_cast<std::size_t>(i)].rul);
  } else {
    fm.target_scaling = target_scaling;
  }
  return fm;
}

}  // namespace pipelife
