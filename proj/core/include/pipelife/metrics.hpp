#pragma once

#include <span>
#include <string>
#include <string_view>

namespace pipelife {

/// Model-quality measures.
///
///   MAE  = (1/n) sum|p - a|
///   RMSE = sqrt((1/n) sum (p - a)^2)
///   MAPE = (100/m) sum |p - a| / |a|   over the m terms with a != 0
///   RAE  = sum|p - a| / sum|a - mean(a)|
///   RRSE = sqrt(sum (p - a)^2 / sum (a - mean(a))^2)
///   R2   = 1 - sum (p - a)^2 / sum (a - mean(a))^2
struct MetricsReport {
  double mae = 0.0;
  double rrse = 0.0;
  double mape = 0.0;
  double rae = 0.0;
  double r2 = 1.0;
  double rmse = 0.0;
  std::size_t n = 0;
  std::size_t mape_skipped = 0;  // terms with a zero actual

  [[nodiscard]] std::string to_json() const;
};

/// Errors: LengthMismatch, TooShort (n < 2), ConstantActuals,
/// AllMapeTermsSkipped.
[[nodiscard]] MetricsReport evaluate(std::span<const double> predicted, std::span<const double> actual);

enum class AccuracyClass { High, NotHigh };

[[nodiscard]] std::string_view to_string(AccuracyClass c) noexcept;

/// MAPE strictly below 10 percent is a high-accuracy forecast.
/// Throws Error{NegativeMape}.
[[nodiscard]] AccuracyClass classify_accuracy(double mape);

inline constexpr double kHighAccuracyMape = 10.0;

}  // namespace pipelife
