#pragma once

#include <span>
#include <string>
#include <vector>

#include "pipelife/dataset.hpp"
#include "pipelife/features.hpp"

namespace pipelife::stats {

struct SummaryStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1); 0 for a single value
  double mode = 0.0;
  std::size_t n = 0;
};

/// Mode is taken after rounding to `mode_decimals` places, ties to the
/// smallest value. Throws Error{EmptySeries}.
[[nodiscard]] SummaryStats summarize(std::span<const double> column, int mode_decimals = 0);

/// (x - mean) / std. Throws Error{ZeroStd} unless std > 0.
[[nodiscard]] double z_score(double x, double mean, double std);

/// Sample Pearson correlation. Errors: LengthMismatch, TooShort,
/// ConstantSeries.
[[nodiscard]] double pearson(std::span<const double> x, std::span<const double> y);

struct AnovaResult {
  double f = 0.0;
  double p = 1.0;
  double ss_between = 0.0;
  double ss_within = 0.0;
  double df_between = 0.0;
  double df_within = 0.0;

  [[nodiscard]] double ms_between() const noexcept { return ss_between / df_between; }
  [[nodiscard]] double ms_within() const noexcept { return ss_within / df_within; }
};

/// One-way analysis of variance. F is +inf (p = 0) when every group is
/// internally constant but the group means differ.
///
/// Errors: TooFewGroups (< 2 groups, a group with < 2 observations);
/// DegenerateWithinVariance (all groups constant and identical).
[[nodiscard]] AnovaResult anova_one_way(const std::vector<std::vector<double>>& groups);

enum class TTestVariance { Welch, Pooled };

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  bool degenerate = false;  // both samples have zero variance
};

/// Two-sample t-test, two-sided. With zero variance in both samples the
/// result is flagged degenerate: t = 0, p = 1 for equal means, otherwise
/// t = +-inf, p = 0. Throws Error{TooShort} when a sample has < 2 values.
[[nodiscard]] TTestResult t_test_two_sample(std::span<const double> a, std::span<const double> b,
                                            TTestVariance variance = TTestVariance::Welch);

inline constexpr double kSignificanceLevel = 0.05;

struct FeatureSignificance {
  Feature feature = Feature::Age;
  double pearson_r = 0.0;
  double anova_f = 0.0;
  double anova_p = 1.0;
  std::size_t anova_groups = 0;
  double t_stat = 0.0;
  double t_p = 1.0;
  bool t_degenerate = false;
  bool significant = false;  // anova_p < 0.05
};

struct SignificanceReport {
  std::vector<FeatureSignificance> features;

  [[nodiscard]] const FeatureSignificance& at(Feature f) const;
  [[nodiscard]] std::string to_json() const;
};

/// Groups `values` by quantile bins of `key`. Keys with at most `bins`
/// distinct values are grouped by value; otherwise cut points sit at the
/// j/bins order statistics, ties go to the upper bin, and empty bins are
/// dropped.
[[nodiscard]] std::vector<std::vector<double>> group_by_quantile_bins(std::span<const double> key,
                                                                      std::span<const double> values,
                                                                      int bins);

/// Screens each of the seven inputs against RUL: Pearson r, ANOVA of RUL
/// over quantile bins of the feature, and a Welch t-test of RUL between the
/// below-median and at-or-above-median halves.
///
/// Throws Error{MissingTarget} when a record lacks RUL; other errors
/// propagate from the constituent tests.
[[nodiscard]] SignificanceReport significance_report(const Dataset& d, int bins = 4);

/// Min, max, mean, std and mode rows for the seven inputs plus RUL.
struct ColumnSummary {
  std::string name;
  SummaryStats stats;
};
[[nodiscard]] std::vector<ColumnSummary> summarize_dataset(const Dataset& d);
[[nodiscard]] std::string render_summary_table(const std::vector<ColumnSummary>& rows);

}  // namespace pipelife::stats
