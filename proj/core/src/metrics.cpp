#include "pipelife/metrics.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numeric>

#include "pipelife/csv.hpp"
#include "pipelife/error.hpp"

namespace pipelife {

std::string MetricsReport::to_json() const {
  return fmt::format(
      R"({{"n": {}, "mae": {}, "rmse": {}, "mape": {}, "mape_skipped": {}, "rae": {}, "rrse": {}, "r2": {}}})", n,
      format_number(mae), format_number(rmse), format_number(mape), mape_skipped, format_number(rae),
      format_number(rrse), format_number(r2));
}

MetricsReport evaluate(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) {
    throw Error(ErrorCode::LengthMismatch, "predicted and actual series differ in length");
  }
  if (actual.size() < 2) throw Error(ErrorCode::TooShort, "metrics need at least two observations");
  const std::size_t n = actual.size();
  const double mean = std::accumulate(actual.begin(), actual.end(), 0.0) / static_cast<double>(n);

  double abs_err = 0.0;
  double sq_err = 0.0;
  double abs_dev = 0.0;
  double sq_dev = 0.0;
  double pct = 0.0;
  std::size_t pct_terms = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = predicted[i] - actual[i];
    const double dev = actual[i] - mean;
    abs_err += std::abs(e);
    sq_err += e * e;
    abs_dev += std::abs(dev);
    sq_dev += dev * dev;
    if (actual[i] != 0.0) {
      pct += std::abs(e) / std::abs(actual[i]);
      ++pct_terms;
    }
  }
  if (sq_dev == 0.0) throw Error(ErrorCode::ConstantActuals, "relative measures need non-constant actuals");
  if (pct_terms == 0) throw Error(ErrorCode::AllMapeTermsSkipped, "every actual value is zero");

  MetricsReport r;
  r.n = n;
  r.mae = abs_err / static_cast<double>(n);
  r.rmse = std::sqrt(sq_err / static_cast<double>(n));
  r.mape = 100.0 * pct / static_cast<double>(pct_terms);
  r.mape_skipped = n - pct_terms;
  r.rae = abs_err / abs_dev;
  const double ratio = sq_err / sq_dev;
  r.rrse = std::sqrt(ratio);
  r.r2 = 1.0 - ratio;
  return r;
}

std::string_view to_string(AccuracyClass c) noexcept {
  return c == AccuracyClass::High ? "high-accuracy" : "not high-accuracy";
}

AccuracyClass classify_accuracy(double mape) {
  if (!(mape >= 0.0)) throw Error(ErrorCode::NegativeMape, "MAPE must be non-negative");
  return mape < kHighAccuracyMape ? AccuracyClass::High : AccuracyClass::NotHigh;
}

}  // namespace pipelife
