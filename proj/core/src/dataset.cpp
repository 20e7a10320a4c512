#include "pipelife/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pipelife/error.hpp"

namespace pipelife {

std::optional<std::string_view> first_invalid_column(const PipeRecord& rec, int reference_year) {
  if (rec.age < 0) return "age_years";
  if (!std::isfinite(rec.diameter) || rec.diameter < kMinDiameter || rec.diameter > kMaxDiameter) {
    return "diameter_in";
  }
  if (!std::isfinite(rec.length) || rec.length <= 0.0) return "length_ft";
  if (rec.breaks < 0) return "breaks";
  if (std::abs((reference_year - rec.install_year) - rec.age) > kAgeYearTolerance) {
    return "install_year";
  }
  if (!std::isfinite(rec.wall_thickness_loss) || rec.wall_thickness_loss < 0.0 ||
      rec.wall_thickness_loss > 100.0) {
    return "wall_thickness_loss_pct";
  }
  if (rec.rul && (!std::isfinite(*rec.rul) || *rec.rul < 0.0)) return "rul_years";
  return std::nullopt;
}

std::string_view to_string(SplitLabel label) noexcept {
  switch (label) {
    case SplitLabel::Train: return "train";
    case SplitLabel::Validation: return "validation";
    case SplitLabel::Test: return "test";
  }
  return "";
}

bool Dataset::has_targets() const noexcept {
  return !records.empty() &&
         std::all_of(records.begin(), records.end(), [](const PipeRecord& r) { return r.rul.has_value(); });
}

Dataset split_dataset(Dataset d, const SplitRatios& ratios, std::uint64_t seed) {
  const double sum = ratios.train + ratios.validation + ratios.test;
  if (ratios.train < 0.0 || ratios.validation < 0.0 || ratios.test < 0.0 ||
      std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::RatioSumInvalid, "split ratios must be non-negative and sum to 1");
  }
  const std::size_t n = d.records.size();
  // The epsilon absorbs products such as 0.29 * 100 = 28.999999999999996.
  auto share = [n](double r) { return static_cast<std::size_t>(std::floor(r * static_cast<double>(n) + 1e-9)); };
  std::array<std::size_t, 3> counts = {share(ratios.train), share(ratios.validation), share(ratios.test)};
  std::size_t assigned = counts[0] + counts[1] + counts[2];
  for (std::size_t k = 0; assigned < n; k = (k + 1) % 3, ++assigned) ++counts[k];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  d.split.assign(n, SplitLabel::Train);
  for (std::size_t i = counts[0]; i < counts[0] + counts[1]; ++i) d.split[order[i]] = SplitLabel::Validation;
  for (std::size_t i = counts[0] + counts[1]; i < n; ++i) d.split[order[i]] = SplitLabel::Test;
  return d;
}

std::array<std::size_t, 3> split_counts(const Dataset& d) {
  std::array<std::size_t, 3> counts{};
  for (auto label : d.split) ++counts[static_cast<std::size_t>(label)];
  return counts;
}

std::vector<std::size_t> indices_with_label(const Dataset& d, SplitLabel label) {
  std::vector<std::size_t> out;
  if (d.split.empty()) {
    if (label == SplitLabel::Train) {
      out.resize(d.size());
      std::iota(out.begin(), out.end(), std::size_t{0});
    }
    return out;
  }
  for (std::size_t i = 0; i < d.split.size(); ++i) {
    if (d.split[i] == label) out.push_back(i);
  }
  return out;
}

}  // namespace pipelife
