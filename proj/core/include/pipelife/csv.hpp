#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pipelife/dataset.hpp"

namespace pipelife {

/// Fixed column names of the pipe inventory CSV. `rul_years` is optional.
namespace columns {
inline constexpr std::string_view kAge = "age_years";
inline constexpr std::string_view kDiameter = "diameter_in";
inline constexpr std::string_view kLength = "length_ft";
inline constexpr std::string_view kMaterial = "material";
inline constexpr std::string_view kBreaks = "breaks";
inline constexpr std::string_view kInstallYear = "install_year";
inline constexpr std::string_view kWallThicknessLoss = "wall_thickness_loss_pct";
inline constexpr std::string_view kRul = "rul_years";
}  // namespace columns

inline constexpr std::string_view kPredictedRulColumn = "predicted_rul";

struct CleaningReport {
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
  std::size_t malformed_rows = 0;  // wrong field count
  /// Drops attributed to the first offending column of each dropped row.
  std::map<std::string, std::size_t> per_column;

  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] std::string to_json() const;
};

struct IngestResult {
  Dataset dataset;
  CleaningReport report;
};

/// Reads a pipe inventory. Rows with a blank or unparseable cell, or that
/// break a PipeRecord invariant, are dropped and counted. Surviving rows keep
/// their file order.
///
/// Errors: FileUnreadable, SchemaMismatch (a required column is missing; the
/// message names it), EmptyAfterCleaning.
[[nodiscard]] IngestResult ingest_csv(const std::filesystem::path& path, int reference_year);
[[nodiscard]] IngestResult ingest_csv(std::istream& in, int reference_year);

/// Writes the standard schema. The rul column is written only when every
/// record has a target. `extra` appends one named column (e.g. predictions).
void write_csv(std::ostream& out, const Dataset& d);
void write_csv(std::ostream& out, const Dataset& d, std::string_view extra_name,
               const std::vector<double>& extra);
void write_csv(const std::filesystem::path& path, const Dataset& d);

/// Splits one CSV line, honouring double-quoted fields.
[[nodiscard]] std::vector<std::string> split_csv_line(std::string_view line);

/// Shortest round-trippable decimal representation of a double.
[[nodiscard]] std::string format_number(double v);

}  // namespace pipelife
