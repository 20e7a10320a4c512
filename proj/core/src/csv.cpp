#include "pipelife/csv.hpp"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "pipelife/error.hpp"

namespace pipelife {

namespace {

constexpr std::array<std::string_view, 7> kRequired = {
    columns::kAge,    columns::kDiameter,    columns::kLength,           columns::kMaterial,
    columns::kBreaks, columns::kInstallYear, columns::kWallThicknessLoss,
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> parse_int(std::string_view s) {
  auto v = parse_double(s);
  if (!v || std::floor(*v) != *v || std::abs(*v) > 1e9) return std::nullopt;
  return static_cast<int>(*v);
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string format_number(double v) { return fmt::format("{}", v); }

std::string CleaningReport::to_text() const {
  std::string out = fmt::format("rows read: {}\nrows dropped: {}\n", rows_read, rows_dropped);
  if (malformed_rows > 0) out += fmt::format("  malformed rows: {}\n", malformed_rows);
  for (const auto& [col, count] : per_column) out += fmt::format("  {}: {}\n", col, count);
  return out;
}

std::string CleaningReport::to_json() const {
  std::string out = fmt::format(R"({{"rows_read": {}, "rows_dropped": {}, "malformed_rows": {}, "per_column": {{)",
                                rows_read, rows_dropped, malformed_rows);
  bool first = true;
  for (const auto& [col, count] : per_column) {
    out += fmt::format(R"({}"{}": {})", first ? "" : ", ", col, count);
    first = false;
  }
  out += "}}";
  return out;
}

IngestResult ingest_csv(const std::filesystem::path& path, int reference_year) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open '" + path.string() + "'");
  return ingest_csv(in, reference_year);
}

IngestResult ingest_csv(std::istream& in, int reference_year) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::SchemaMismatch, "missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  const auto header = split_csv_line(line);
  auto find = [&header](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    return std::nullopt;
  };
  std::array<std::size_t, 7> idx{};
  for (std::size_t k = 0; k < kRequired.size(); ++k) {
    auto pos = find(kRequired[k]);
    if (!pos) throw Error(ErrorCode::SchemaMismatch, "missing required column '" + std::string(kRequired[k]) + "'");
    idx[k] = *pos;
  }
  const auto rul_idx = find(columns::kRul);

  IngestResult result;
  result.dataset.reference_year = reference_year;
  auto& report = result.report;

  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++report.rows_read;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      ++report.rows_dropped;
      ++report.malformed_rows;
      continue;
    }
    std::optional<std::string_view> bad;
    PipeRecord rec;
    auto take_int = [&](std::size_t k, int& dst) {
      if (bad) return;
      if (auto v = parse_int(fields[idx[k]])) dst = *v; else bad = kRequired[k];
    };
    auto take_double = [&](std::size_t k, double& dst) {
      if (bad) return;
      if (auto v = parse_double(fields[idx[k]])) dst = *v; else bad = kRequired[k];
    };
    take_int(0, rec.age);
    take_double(1, rec.diameter);
    take_double(2, rec.length);
    if (!bad) {
      try {
        rec.material = encode_material(trim(fields[idx[3]]));
      } catch (const Error&) {
        bad = kRequired[3];
      }
    }
    take_int(4, rec.breaks);
    take_int(5, rec.install_year);
    take_double(6, rec.wall_thickness_loss);
    if (!bad && rul_idx) {
      if (auto v = parse_double(fields[*rul_idx])) rec.rul = *v; else bad = columns::kRul;
    }
    if (!bad) bad = first_invalid_column(rec, reference_year);
    if (bad) {
      ++report.rows_dropped;
      ++report.per_column[std::string(*bad)];
      continue;
    }
    result.dataset.records.push_back(rec);
  }
  if (result.dataset.records.empty()) {
    throw Error(ErrorCode::EmptyAfterCleaning,
                fmt::format("no usable rows after cleaning ({} read)", report.rows_read));
  }
  return result;
}

void write_csv(std::ostream& out, const Dataset& d, std::string_view extra_name,
               const std::vector<double>& extra) {
  const bool with_rul = d.has_targets();
  const bool with_extra = !extra_name.empty();
  if (with_extra && extra.size() != d.size()) {
    throw Error(ErrorCode::LengthMismatch, "extra column length differs from record count");
  }
  std::string buf;
  for (std::size_t k = 0; k < kRequired.size(); ++k) {
    if (k) buf += ',';
    buf += kRequired[k];
  }
  if (with_rul) fmt::format_to(std::back_inserter(buf), ",{}", columns::kRul);
  if (with_extra) fmt::format_to(std::back_inserter(buf), ",{}", extra_name);
  buf += '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& r = d.records[i];
    fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{}", r.age, format_number(r.diameter),
                   format_number(r.length), material_name(r.material.kind), r.breaks, r.install_year,
                   format_number(r.wall_thickness_loss));
    if (with_rul) fmt::format_to(std::back_inserter(buf), ",{}", format_number(*r.rul));
    if (with_extra) fmt::format_to(std::back_inserter(buf), ",{}", format_number(extra[i]));
    buf += '\n';
  }
  out << buf;
}

void write_csv(std::ostream& out, const Dataset& d) { write_csv(out, d, {}, {}); }

void write_csv(const std::filesystem::path& path, const Dataset& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FileUnreadable, "cannot write '" + path.string() + "'");
  write_csv(out, d);
}

}  // namespace pipelife
