#include "pipelife/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "pipelife/csv.hpp"
#include "pipelife/error.hpp"
#include "pipelife/special_functions.hpp"

namespace pipelife::stats {

namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sum_sq_dev(std::span<const double> v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s;
}

}  // namespace

SummaryStats summarize(std::span<const double> column, int mode_decimals) {
  if (column.empty()) throw Error(ErrorCode::EmptySeries, "cannot summarize an empty series");
  SummaryStats s;
  s.n = column.size();
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  s.min = *lo;
  s.max = *hi;
  s.mean = std::clamp(mean_of(column), s.min, s.max);
  s.std = s.n > 1 ? std::sqrt(sum_sq_dev(column, s.mean) / static_cast<double>(s.n - 1)) : 0.0;

  const double scale = std::pow(10.0, mode_decimals);
  std::map<double, std::size_t> counts;
  for (double v : column) ++counts[std::round(v * scale) / scale];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;  // strict: ties keep the smaller key
  }
  s.mode = std::clamp(best->first, s.min, s.max);
  return s;
}

double z_score(double x, double mean, double std) {
  if (!(std > 0.0)) throw Error(ErrorCode::ZeroStd, "standard deviation must be positive");
  return (x - mean) / std;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "pearson needs equal-length series");
  if (x.size() < 2) throw Error(ErrorCode::TooShort, "pearson needs at least two observations");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::ConstantSeries, "pearson is undefined for a constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

AnovaResult anova_one_way(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw Error(ErrorCode::TooFewGroups, "ANOVA needs at least two groups");
  std::size_t n = 0;
  double total = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw Error(ErrorCode::TooFewGroups, "every ANOVA group needs at least two observations");
    n += g.size();
    total += std::accumulate(g.begin(), g.end(), 0.0);
  }
  const double grand = total / static_cast<double>(n);
  AnovaResult r;
  for (const auto& g : groups) {
    const double m = mean_of(g);
    r.ss_between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    r.ss_within += sum_sq_dev(g, m);
  }
  r.df_between = static_cast<double>(groups.size() - 1);
  r.df_within = static_cast<double>(n - groups.size());
  if (r.ss_within == 0.0) {
    if (r.ss_between == 0.0) {
      throw Error(ErrorCode::DegenerateWithinVariance, "all groups are constant and identical");
    }
    r.f = std::numeric_limits<double>::infinity();
    r.p = 0.0;
    return r;
  }
  r.f = r.ms_between() / r.ms_within();
  r.p = std::clamp(special::f_upper_tail(r.f, r.df_between, r.df_within), 0.0, 1.0);
  return r;
}

TTestResult t_test_two_sample(std::span<const double> a, std::span<const double> b, TTestVariance variance) {
  if (a.size() < 2 || b.size() < 2) throw Error(ErrorCode::TooShort, "each t-test sample needs at least two values");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  const double va = sum_sq_dev(a, ma) / (na - 1.0);
  const double vb = sum_sq_dev(b, mb) / (nb - 1.0);
  TTestResult r;
  if (va == 0.0 && vb == 0.0) {
    r.degenerate = true;
    r.df = na + nb - 2.0;
    if (ma == mb) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = ma > mb ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
      r.p = 0.0;
    }
    return r;
  }
  double se2 = 0.0;
  if (variance == TTestVariance::Pooled) {
    const double sp2 = ((na - 1.0) * va + (nb - 1.0) * vb) / (na + nb - 2.0);
    se2 = sp2 * (1.0 / na + 1.0 / nb);
    r.df = na + nb - 2.0;
  } else {
    const double qa = va / na;
    const double qb = vb / nb;
    se2 = qa + qb;
    r.df = se2 * se2 / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
  }
  r.t = (ma - mb) / std::sqrt(se2);
  r.p = std::clamp(special::t_two_sided(r.t, r.df), 0.0, 1.0);
  return r;
}

std::vector<std::vector<double>> group_by_quantile_bins(std::span<const double> key, std::span<const double> values,
                                                        int bins) {
  if (key.size() != values.size()) throw Error(ErrorCode::LengthMismatch, "key and value series differ in length");
  if (bins < 2) throw Error(ErrorCode::TooFewGroups, "at least two bins are required");
  std::vector<double> distinct(key.begin(), key.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<double> cuts;
  if (distinct.size() <= static_cast<std::size_t>(bins)) {
    cuts.assign(distinct.begin() + (distinct.empty() ? 0 : 1), distinct.end());
  } else {
    std::vector<double> sorted(key.begin(), key.end());
    std::sort(sorted.begin(), sorted.end());
    for (int j = 1; j < bins; ++j) {
      cuts.push_back(sorted[static_cast<std::size_t>(j) * sorted.size() / static_cast<std::size_t>(bins)]);
    }
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }
  std::vector<std::vector<double>> groups(cuts.size() + 1);
  for (std::size_t i = 0; i < key.size(); ++i) {
    const auto bin = static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), key[i]) - cuts.begin());
    groups[bin].push_back(values[i]);
  }
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  return groups;
}

const FeatureSignificance& SignificanceReport::at(Feature f) const {
  for (const auto& s : features) {
    if (s.feature == f) return s;
  }
  throw Error(ErrorCode::UnknownColumn, "feature not in report: " + std::string(feature_name(f)));
}

std::string SignificanceReport::to_json() const {
  std::string out = "{\"significance_level\": 0.05, \"features\": [";
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& s = features[i];
    out += fmt::format(
        R"({}{{"feature": "{}", "pearson_r": {}, "anova_f": {}, "anova_p": {}, "anova_groups": {}, )"
        R"("t_stat": {}, "t_p": {}, "t_degenerate": {}, "significant": {}}})",
        i ? ", " : "", feature_name(s.feature), format_number(s.pearson_r),
        std::isfinite(s.anova_f) ? format_number(s.anova_f) : std::string("null"), format_number(s.anova_p),
        s.anova_groups, std::isfinite(s.t_stat) ? format_number(s.t_stat) : std::string("null"),
        format_number(s.t_p), s.t_degenerate, s.significant);
  }
  out += "]}";
  return out;
}

SignificanceReport significance_report(const Dataset& d, int bins) {
  if (!d.has_targets()) throw Error(ErrorCode::MissingTarget, "significance screening needs RUL on every record");
  std::vector<double> rul(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) rul[i] = *d.records[i].rul;

  SignificanceReport report;
  for (Feature f : kAllFeatures) {
    std::vector<double> x(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) x[i] = feature_value(d.records[i], f);
    FeatureSignificance s;
    s.feature = f;
    s.pearson_r = pearson(x, rul);
    const auto groups = group_by_quantile_bins(x, rul, bins);
    const auto anova = anova_one_way(groups);
    s.anova_f = anova.f;
    s.anova_p = anova.p;
    s.anova_groups = groups.size();

    std::vector<double> sorted = x;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    std::vector<double> below;
    std::vector<double> above;
    for (std::size_t i = 0; i < x.size(); ++i) (x[i] < median ? below : above).push_back(rul[i]);
    const auto t = t_test_two_sample(below, above);
    s.t_stat = t.t;
    s.t_p = t.p;
    s.t_degenerate = t.degenerate;
    s.significant = s.anova_p < kSignificanceLevel;
    report.features.push_back(s);
  }
  return report;
}

std::vector<ColumnSummary> summarize_dataset(const Dataset& d) {
  std::vector<ColumnSummary> rows;
  for (Feature f : kAllFeatures) {
    std::vector<double> x(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) x[i] = feature_value(d.records[i], f);
    rows.push_back({std::string(feature_name(f)), summarize(x, f == Feature::Material ? 2 : 0)});
  }
  if (d.has_targets()) {
    std::vector<double> y(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) y[i] = *d.records[i].rul;
    rows.push_back({"rul_years", summarize(y)});
  }
  return rows;
}

std::string render_summary_table(const std::vector<ColumnSummary>& rows) {
  std::string out = fmt::format("{:<26}{:>12}{:>12}{:>12}{:>12}{:>12}\n", "feature", "min", "max", "mean", "std", "mode");
  for (const auto& r : rows) {
    out += fmt::format("{:<26}{:>12.2f}{:>12.2f}{:>12.2f}{:>12.2f}{:>12.2f}\n", r.name, r.stats.min, r.stats.max,
                       r.stats.mean, r.stats.std, r.stats.mode);
  }
  return out;
}

}  // namespace pipelife::stats
