#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pipelife/material.hpp"

namespace pipelife {

/// One pipe segment from an asset inventory.
struct PipeRecord {
  int age = 0;                       // years
  double diameter = 6.0;             // inches
  double length = 1.0;               // feet
  Material material{};
  int breaks = 0;
  int install_year = 0;
  double wall_thickness_loss = 0.0;  // percent of original wall
  std::optional<double> rul;         // years; absent for prediction-only rows
};

inline constexpr double kMinDiameter = 4.0;
inline constexpr double kMaxDiameter = 24.0;
inline constexpr int kAgeYearTolerance = 1;

/// Column whose value breaks a PipeRecord invariant, or nullopt when the
/// record is valid against `reference_year`.
[[nodiscard]] std::optional<std::string_view> first_invalid_column(const PipeRecord& rec,
                                                                   int reference_year);

enum class SplitLabel : std::uint8_t { Train, Validation, Test };

[[nodiscard]] std::string_view to_string(SplitLabel label) noexcept;

struct SplitRatios {
  double train = 0.75;
  double validation = 0.10;
  double test = 0.15;
};

struct Dataset {
  std::vector<PipeRecord> records;
  int reference_year = 2012;
  std::vector<SplitLabel> split;  // empty, or one label per record

  [[nodiscard]] std::size_t size() const noexcept { return records.size(); }
  [[nodiscard]] bool empty() const noexcept { return records.empty(); }
  [[nodiscard]] bool has_split() const noexcept { return !split.empty(); }
  /// True when every record carries a RUL target.
  [[nodiscard]] bool has_targets() const noexcept;
};

/// Deterministic shuffle-and-label. Each class gets floor(ratio * n) records;
/// leftover records are handed out round-robin starting with Train, so every
/// class is within one record of its ratio.
///
/// Throws Error{RatioSumInvalid} when a ratio is negative or the three do not
/// sum to 1 within 1e-9.
[[nodiscard]] Dataset split_dataset(Dataset d, const SplitRatios& ratios, std::uint64_t seed);

/// Label counts in Train, Validation, Test order.
[[nodiscard]] std::array<std::size_t, 3> split_counts(const Dataset& d);

/// Records carrying `label`, in dataset order.
[[nodiscard]] std::vector<std::size_t> indices_with_label(const Dataset& d, SplitLabel label);

}  // namespace pipelife
