#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pipelife/dataset.hpp"
#include "pipelife/material.hpp"
#include "pipelife/stats.hpp"

namespace pipelife::synth {

/// Seeded generator of pipe inventories with the moments and structure of the
/// merged municipal datasets:
///
///   age          mixture: 20% U(1,30), 55% N(44,12), 25% U(60,125), rounded
///   install_year reference_year - age
///   WTL          19 + k_m * age + N(0, 3), clipped to [1, 59],
///                k_m = 0.26 * (0.4 + 0.6 * ea / 8.35)
///   RUL          ASL_m * exp(-0.008 * age - ln2/10 * (WTL - 19)) * exp(N(0, s)),
///                clipped to [3, 90]
///
/// so ten points of wall-thickness loss halve the expected RUL. Diameter is
/// drawn from the standard sizes with mode 6 in, length is log-normal with
/// mean near 2,870 ft, and breaks are Poisson with a rate growing in age and
/// EA.
struct GeneratorConfig {
  std::size_t n = 5000;
  std::uint64_t seed = 42;
  int reference_year = 2012;
  std::map<MaterialKind, double> material_mix = {
      {MaterialKind::CastIron, 0.46},
      {MaterialKind::Asbestos, 0.28},
      {MaterialKind::DuctileIron, 0.16},
      {MaterialKind::Steel, 0.10},
  };
  double rul_log_noise_sd = 0.05;
  double age_decay = 0.008;                  // per year
  double wtl_decay = 0.06931471805599453;    // per WTL point, ln(2)/10
  double baseline_wtl = 19.0;                // WTL of a new pipe
  std::map<MaterialKind, double> asl_by_material = {
      {MaterialKind::CastIron, 101.0},   {MaterialKind::Asbestos, 98.0},
      {MaterialKind::DuctileIron, 110.0}, {MaterialKind::Steel, 108.0},
      {MaterialKind::PVC, 110.0},        {MaterialKind::Polyethylene, 115.0},
      {MaterialKind::Concrete, 95.0},
  };

  /// Throws Error{InvalidConfig}.
  void validate() const;
};

/// Deterministic per config. Every record satisfies the PipeRecord
/// invariants. Throws Error{InvalidConfig}.
[[nodiscard]] Dataset generate(const GeneratorConfig& config);

/// Calibration targets for the tracked columns.
struct MomentTarget {
  double mean = 0.0;
  double std = 0.0;
};

struct MomentRow {
  std::string column;
  stats::SummaryStats computed;
  std::optional<MomentTarget> target;
  double mean_deviation_pct = 0.0;  // 100 * (computed - target) / target
  double std_deviation_pct = 0.0;
};

struct MomentReport {
  std::vector<MomentRow> rows;

  [[nodiscard]] const MomentRow& at(std::string_view column) const;
  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] std::string to_json() const;
};

/// Computed moments beside the reference inventory targets.
/// Throws Error{EmptyDataset}.
[[nodiscard]] MomentReport moment_report(const Dataset& d);

}  // namespace pipelife::synth
