#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "pipelife/metrics.hpp"
#include "pipelife/special_functions.hpp"
#include "pipelife/stats.hpp"
#include "support.hpp"

namespace pipelife {
namespace {

using testing::make_record;

TEST(Summary, SmallSeries) {
  const std::vector<double> v = {5, 5, 7};
  const auto s = stats::summarize(v);
  EXPECT_EQ(s.n, 3u);
  EXPECT_DOUBLE_EQ(s.min, 5.0);
  EXPECT_DOUBLE_EQ(s.max, 7.0);
  EXPECT_NEAR(s.mean, 17.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.std, std::sqrt(4.0 / 3.0), 1e-12);
  EXPECT_DOUBLE_EQ(s.mode, 5.0);
}

TEST(Summary, ModeTiesGoToSmallest) {
  const std::vector<double> v = {3, 1, 3, 1, 2};
  EXPECT_DOUBLE_EQ(stats::summarize(v).mode, 1.0);
  const std::vector<double> one = {4.5};
  EXPECT_DOUBLE_EQ(stats::summarize(one).std, 0.0);
  EXPECT_ERROR_CODE(stats::summarize(std::vector<double>{}), ErrorCode::EmptySeries);
}

TEST(ZScore, KnownValues) {
  EXPECT_NEAR(stats::z_score(80.09, 49.78, 30.31), 1.0, 1e-12);
  EXPECT_ERROR_CODE(stats::z_score(1.0, 1.0, 0.0), ErrorCode::ZeroStd);
}

TEST(Pearson, KnownValues) {
  const std::vector<double> x = {1, 2, 3};
  const std::vector<double> y = {1, 3, 2};
  EXPECT_NEAR(stats::pearson(x, y), 0.5, 1e-12);
  EXPECT_NEAR(stats::pearson(x, x), 1.0, 1e-12);
  const std::vector<double> c = {2, 2, 2};
  EXPECT_ERROR_CODE(stats::pearson(x, c), ErrorCode::ConstantSeries);
  EXPECT_ERROR_CODE(stats::pearson(x, std::vector<double>{1, 2}), ErrorCode::LengthMismatch);
  EXPECT_ERROR_CODE(stats::pearson(std::vector<double>{1}, std::vector<double>{2}), ErrorCode::TooShort);
}

TEST(Anova, TwoGroups) {
  const auto r = stats::anova_one_way({{1, 2}, {5, 6}});
  EXPECT_NEAR(r.f, 32.0, 1e-12);
  EXPECT_NEAR(r.p, 0.02985749985466811, 1e-10);
  EXPECT_DOUBLE_EQ(r.df_between, 1.0);
  EXPECT_DOUBLE_EQ(r.df_within, 2.0);
}

TEST(Anova, ThreeGroupsMatchReference) {
  const auto r = stats::anova_one_way({{1, 2, 3}, {4, 5, 6, 7}, {2, 9, 4}});
  EXPECT_NEAR(r.f, 2.45, 1e-12);
  EXPECT_NEAR(r.p, 0.15610929958220443, 1e-9);
}

TEST(Anova, EqualsSquaredPooledT) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> a(8), b(13);
    for (auto& v : a) v = n(rng);
    for (auto& v : b) v = 0.7 + 2.0 * n(rng);
    const auto f = stats::anova_one_way({a, b});
    const auto t = stats::t_test_two_sample(a, b, stats::TTestVariance::Pooled);
    EXPECT_NEAR(f.f, t.t * t.t, 1e-9 * f.f);
    EXPECT_NEAR(f.p, t.p, 1e-9);
  }
}

TEST(Anova, DegenerateCases) {
  EXPECT_ERROR_CODE(stats::anova_one_way({{1, 2, 3}}), ErrorCode::TooFewGroups);
  EXPECT_ERROR_CODE(stats::anova_one_way({{1, 2}, {3}}), ErrorCode::TooFewGroups);
  EXPECT_ERROR_CODE(stats::anova_one_way({{2, 2}, {2, 2}}), ErrorCode::DegenerateWithinVariance);
  const auto r = stats::anova_one_way({{1, 1}, {3, 3}});
  EXPECT_TRUE(std::isinf(r.f));
  EXPECT_DOUBLE_EQ(r.p, 0.0);
}

TEST(TTest, WelchMatchesReference) {
  const std::vector<double> a = {1, 2, 3, 4, 5};
  const std::vector<double> b = {2, 4, 6, 8, 10, 12};
  const auto r = stats::t_test_two_sample(a, b);
  EXPECT_NEAR(r.t, -2.3763541031440183, 1e-12);
  EXPECT_NEAR(r.df, 6.972255729794934, 1e-9);
  EXPECT_NEAR(r.p, 0.04928433820673049, 1e-9);
  EXPECT_FALSE(r.degenerate);
}

TEST(TTest, ZeroVarianceFlagged) {
  const std::vector<double> a = {2, 2, 2};
  const std::vector<double> b = {2, 2};
  const auto same = stats::t_test_two_sample(a, b);
  EXPECT_TRUE(same.degenerate);
  EXPECT_DOUBLE_EQ(same.p, 1.0);
  const std::vector<double> c = {5, 5};
  const auto diff = stats::t_test_two_sample(a, c);
  EXPECT_TRUE(diff.degenerate);
  EXPECT_DOUBLE_EQ(diff.p, 0.0);
  EXPECT_ERROR_CODE(stats::t_test_two_sample(std::vector<double>{1}, c), ErrorCode::TooShort);
}

struct TailCase {
  double f, d1, d2, p;
};

TEST(SpecialFunctions, FUpperTailMatchesReference) {
  // reference values from scipy.stats.f.sf
  const TailCase cases[] = {
      {32.0, 1, 2, 0.02985749985466811},  {1.0, 3, 10, 0.432337203021697},
      {4.5, 2, 30, 0.019536632871184154}, {0.25, 5, 5, 0.9228113747577933},
      {10.0, 4, 100, 7.548904891856167e-07}, {2.0, 10, 3, 0.3093777544664425},
  };
  for (const auto& c : cases) {
    EXPECT_NEAR(special::f_upper_tail(c.f, c.d1, c.d2), c.p, 1e-10 + 1e-8 * c.p) << c.f << " " << c.d1 << " " << c.d2;
  }
}

TEST(SpecialFunctions, TTwoSidedMatchesReference) {
  EXPECT_NEAR(special::t_two_sided(2.0, 5), 0.10193947882985828, 1e-10);
  EXPECT_NEAR(special::t_two_sided(-0.5, 30), 0.6207230048851273, 1e-10);
  EXPECT_NEAR(special::t_two_sided(3.7, 2.5), 0.04636956692187038, 1e-10);
  EXPECT_NEAR(special::t_two_sided(1.96, 1000), 0.05027318495574871, 1e-10);
}

TEST(SpecialFunctions, IncompleteBetaAgreesWithBoost) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ab(0.2, 60.0);
  std::uniform_real_distribution<double> xs(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double a = ab(rng), b = ab(rng), x = xs(rng);
    EXPECT_NEAR(special::incomplete_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-11) << a << " " << b << " " << x;
  }
  EXPECT_DOUBLE_EQ(special::incomplete_beta(2, 3, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(special::incomplete_beta(2, 3, 1.0), 1.0);
}

TEST(QuantileBins, GroupsByValueWhenFewDistinct) {
  const std::vector<double> key = {1, 2, 1, 2, 3};
  const std::vector<double> val = {10, 20, 11, 21, 30};
  const auto g = stats::group_by_quantile_bins(key, val, 4);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], (std::vector<double>{10, 11}));
}

TEST(QuantileBins, EveryValueLandsInOneBin) {
  std::vector<double> key, val;
  for (int i = 0; i < 103; ++i) {
    key.push_back((i * 37) % 101);
    val.push_back(i);
  }
  const auto g = stats::group_by_quantile_bins(key, val, 4);
  EXPECT_EQ(g.size(), 4u);
  std::size_t total = 0;
  for (const auto& b : g) total += b.size();
  EXPECT_EQ(total, 103u);
}

// RUL driven by age and WTL; diameter is planted as pure noise.
Dataset planted(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> age(1, 100);
  std::normal_distribution<double> eps(0.0, 3.0);
  std::uniform_int_distribution<int> dia(0, 5);
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    const int a = age(rng);
    const double wtl = std::clamp(10.0 + 0.4 * a + eps(rng), 1.0, 90.0);
    auto r = make_record(a, wtl, std::max(1.0, 80.0 - 0.4 * a - 0.5 * wtl + eps(rng)));
    r.diameter = 4.0 + 4.0 * dia(rng);
    r.material = Material{kAllMaterials[static_cast<std::size_t>(dia(rng))]};
    r.length = 100.0 + 50.0 * dia(rng);
    r.breaks = dia(rng);
    d.records.push_back(r);
  }
  return d;
}

TEST(Significance, DrivenColumnsSignificantNoiseUsuallyNot) {
  int noise_hits = 0;
  constexpr int kReps = 40;
  for (int rep = 0; rep < kReps; ++rep) {
    const auto report = stats::significance_report(planted(100 + rep, 400));
    EXPECT_TRUE(report.at(Feature::Age).significant);
    EXPECT_TRUE(report.at(Feature::WallThicknessLoss).significant);
    EXPECT_LT(report.at(Feature::Age).pearson_r, -0.5);
    if (report.at(Feature::Diameter).significant) ++noise_hits;
  }
  EXPECT_LE(noise_hits, kReps / 20);  // at most 5% false positives
}

TEST(Significance, NeedsTargets) {
  Dataset d = planted(1, 20);
  d.records[4].rul.reset();
  EXPECT_ERROR_CODE(stats::significance_report(d), ErrorCode::MissingTarget);
}

// Brute-force oracle written independently from the library.
MetricsReport oracle(const std::vector<double>& p, const std::vector<double>& a) {
  MetricsReport m;
  const double n = static_cast<double>(a.size());
  double mean = 0;
  for (double v : a) mean += v / n;
  double abs_err = 0, sq_err = 0, abs_dev = 0, sq_dev = 0, ape = 0;
  int terms = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    abs_err += std::fabs(p[i] - a[i]);
    sq_err += (p[i] - a[i]) * (p[i] - a[i]);
    abs_dev += std::fabs(a[i] - mean);
    sq_dev += (a[i] - mean) * (a[i] - mean);
    if (a[i] != 0) {
      ape += std::fabs(p[i] - a[i]) / std::fabs(a[i]);
      ++terms;
    }
  }
  m.mae = abs_err / n;
  m.rmse = std::sqrt(sq_err / n);
  m.mape = 100.0 * ape / terms;
  m.rae = abs_err / abs_dev;
  m.rrse = std::sqrt(sq_err / sq_dev);
  m.r2 = 1 - sq_err / sq_dev;
  return m;
}

TEST(Metrics, MatchBruteForce) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(40.0, 15.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> a(50), p(50);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = n(rng);
      p[i] = a[i] + 0.3 * (n(rng) - 40.0);
    }
    if (rep == 0) a[7] = 0.0;
    const auto got = evaluate(p, a);
    const auto want = oracle(p, a);
    EXPECT_NEAR(got.mae, want.mae, 1e-12);
    EXPECT_NEAR(got.rmse, want.rmse, 1e-12);
    EXPECT_NEAR(got.mape, want.mape, 1e-10);
    EXPECT_NEAR(got.rae, want.rae, 1e-12);
    EXPECT_NEAR(got.rrse, want.rrse, 1e-12);
    EXPECT_NEAR(got.r2, want.r2, 1e-12);
    EXPECT_EQ(got.mape_skipped, rep == 0 ? 1u : 0u);
  }
}

TEST(Metrics, PerfectAndSmallExamples) {
  const std::vector<double> a = {10, 20, 30};
  const auto perfect = evaluate(a, a);
  EXPECT_DOUBLE_EQ(perfect.mae, 0.0);
  EXPECT_DOUBLE_EQ(perfect.r2, 1.0);
  const std::vector<double> p = {11, 22, 33};
  EXPECT_NEAR(evaluate(p, a).mape, 10.0, 1e-12);
}

TEST(Metrics, Errors) {
  const std::vector<double> a = {5, 5, 5};
  EXPECT_ERROR_CODE(evaluate(std::vector<double>{1, 2, 3}, a), ErrorCode::ConstantActuals);
  EXPECT_ERROR_CODE(evaluate(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), ErrorCode::LengthMismatch);
  EXPECT_ERROR_CODE(evaluate(std::vector<double>{1}, std::vector<double>{2}), ErrorCode::TooShort);
  EXPECT_ERROR_CODE(evaluate(std::vector<double>{1, 2}, std::vector<double>{0, 0.0}), ErrorCode::ConstantActuals);
}

TEST(Metrics, AccuracyClass) {
  EXPECT_EQ(classify_accuracy(5.431), AccuracyClass::High);
  EXPECT_EQ(classify_accuracy(10.0), AccuracyClass::NotHigh);
  EXPECT_EQ(classify_accuracy(9.999), AccuracyClass::High);
  EXPECT_ERROR_CODE(classify_accuracy(-1.0), ErrorCode::NegativeMape);
}

}  // namespace
}  // namespace pipelife
