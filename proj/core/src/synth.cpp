#include "pipelife/synth.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "pipelife/csv.hpp"
#include "pipelife/error.hpp"
#include "pipelife/features.hpp"

namespace pipelife::synth {

void GeneratorConfig::validate() const {
  if (n == 0) throw Error(ErrorCode::InvalidConfig, "record count must be positive");
  if (material_mix.empty()) throw Error(ErrorCode::InvalidConfig, "material mix is empty");
  double total = 0.0;
  for (const auto& [kind, share] : material_mix) {
    if (!(share >= 0.0)) throw Error(ErrorCode::InvalidConfig, "material shares must be non-negative");
    if (share > 0.0 && !asl_by_material.contains(kind)) {
      throw Error(ErrorCode::InvalidConfig,
                  fmt::format("no service life configured for {}", material_name(kind)));
    }
    total += share;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw Error(ErrorCode::RatioSumInvalid, fmt::format("material shares sum to {}, expected 1", total));
  }
  for (const auto& [kind, asl] : asl_by_material) {
    if (!(asl > 0.0)) throw Error(ErrorCode::InvalidConfig, "service lives must be positive");
  }
  if (!(rul_log_noise_sd >= 0.0) || !(age_decay >= 0.0) || !(wtl_decay >= 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "noise and decay rates must be non-negative");
  }
  if (!(baseline_wtl >= 0.0 && baseline_wtl <= 100.0)) {
    throw Error(ErrorCode::InvalidConfig, "baseline wall thickness loss must be in [0, 100]");
  }
  if (reference_year < 1900) throw Error(ErrorCode::InvalidConfig, "reference year must be >= 1900");
}

Dataset generate(const GeneratorConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<MaterialKind> kinds;
  std::vector<double> shares;
  for (const auto& [kind, share] : config.material_mix) {
    kinds.push_back(kind);
    shares.push_back(share);
  }
  std::discrete_distribution<std::size_t> pick_material(shares.begin(), shares.end());

  constexpr std::array<double, 8> kDiameters = {4, 6, 8, 10, 12, 16, 20, 24};
  constexpr std::array<double, 8> kDiameterWeights = {0.14, 0.28, 0.16, 0.08, 0.12, 0.10, 0.06, 0.06};
  std::discrete_distribution<std::size_t> pick_diameter(kDiameterWeights.begin(), kDiameterWeights.end());
  std::lognormal_distribution<double> length_dist(7.46, 1.0);

  Dataset d;
  d.reference_year = config.reference_year;
  d.records.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    PipeRecord rec;
    const double component = unit(rng);
    double age = 0.0;
    if (component < 0.20) {
      age = 1.0 + 29.0 * unit(rng);
    } else if (component < 0.75) {
      age = 44.0 + 12.0 * normal(rng);
    } else {
      age = 60.0 + 65.0 * unit(rng);
    }
    rec.age = static_cast<int>(std::clamp(std::round(age), 1.0, 125.0));
    rec.install_year = config.reference_year - rec.age;

    const MaterialKind kind = kinds[pick_material(rng)];
    rec.material = Material{kind};
    const double ea_factor = 0.4 + 0.6 * ea_value(kind) / ea_value(MaterialKind::CastIron);

    const double k = 0.26 * ea_factor;
    rec.wall_thickness_loss = std::clamp(config.baseline_wtl + k * rec.age + 3.0 * normal(rng), 1.0, 59.0);

    const double expected = config.asl_by_material.at(kind) *
                            std::exp(-config.age_decay * rec.age -
                                     config.wtl_decay * (rec.wall_thickness_loss - config.baseline_wtl));
    rec.rul = std::clamp(expected * std::exp(config.rul_log_noise_sd * normal(rng)), 3.0, 90.0);

    rec.diameter = kDiameters[pick_diameter(rng)];
    rec.length = std::clamp(length_dist(rng), 20.5, 36161.4);
    std::poisson_distribution<int> breaks(0.2 + 0.1 * rec.age * ea_factor);
    rec.breaks = breaks(rng);
    d.records.push_back(rec);
  }
  return d;
}

const MomentRow& MomentReport::at(std::string_view column) const {
  for (const auto& r : rows) {
    if (r.column == column) return r;
  }
  throw Error(ErrorCode::UnknownColumn, "no moment row for '" + std::string(column) + "'");
}

std::string MomentReport::to_text() const {
  std::string out = fmt::format("{:<26}{:>12}{:>12}{:>12}{:>12}{:>10}{:>10}\n", "column", "mean", "target", "std",
                                "target", "mean%", "std%");
  for (const auto& r : rows) {
    if (r.target) {
      out += fmt::format("{:<26}{:>12.2f}{:>12.2f}{:>12.2f}{:>12.2f}{:>10.1f}{:>10.1f}\n", r.column, r.computed.mean,
                         r.target->mean, r.computed.std, r.target->std, r.mean_deviation_pct, r.std_deviation_pct);
    } else {
      out += fmt::format("{:<26}{:>12.2f}{:>12}{:>12.2f}{:>12}{:>10}{:>10}\n", r.column, r.computed.mean, "-",
                         r.computed.std, "-", "-", "-");
    }
  }
  return out;
}

std::string MomentReport::to_json() const {
  std::string out = "{\"columns\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += fmt::format(R"({}{{"column": "{}", "n": {}, "min": {}, "max": {}, "mean": {}, "std": {}, "mode": {})",
                       i ? ", " : "", r.column, r.computed.n, format_number(r.computed.min),
                       format_number(r.computed.max), format_number(r.computed.mean), format_number(r.computed.std),
                       format_number(r.computed.mode));
    if (r.target) {
      out += fmt::format(R"(, "target_mean": {}, "target_std": {}, "mean_deviation_pct": {}, "std_deviation_pct": {})",
                         format_number(r.target->mean), format_number(r.target->std),
                         format_number(r.mean_deviation_pct), format_number(r.std_deviation_pct));
    }
    out += "}";
  }
  out += "]}";
  return out;
}

namespace {

std::optional<MomentTarget> target_for(std::string_view column) {
  struct Entry {
    std::string_view column;
    MomentTarget target;
  };
  static constexpr Entry kTargets[] = {
      {"age_years", {49.78, 30.31}},
      {"diameter_in", {10.66, 5.13}},
      {"length_ft", {2870.51, 5008.58}},
      {"material", {6.146, 2.75}},
      {"breaks", {5.09, 7.74}},
      {"install_year", {1961.15, 28.78}},
      {"wall_thickness_loss_pct", {29.64, 14.81}},
      {"rul_years", {40.65, 20.46}},
  };
  for (const auto& e : kTargets) {
    if (e.column == column) return e.target;
  }
  return std::nullopt;
}

}  // namespace

MomentReport moment_report(const Dataset& d) {
  if (d.empty()) throw Error(ErrorCode::EmptyDataset, "moment report needs at least one record");
  MomentReport report;
  for (auto& summary : stats::summarize_dataset(d)) {
    MomentRow row;
    row.column = summary.name;
    row.computed = summary.stats;
    row.target = target_for(row.column);
    if (row.target) {
      row.mean_deviation_pct = 100.0 * (row.computed.mean - row.target->mean) / row.target->mean;
      row.std_deviation_pct = 100.0 * (row.computed.std - row.target->std) / row.target->std;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace pipelife::synth
