#include <gtest/gtest.h>

#include <cmath>

#include "qatunnel/error.hpp"
#include "qatunnel/scaling.hpp"

using namespace qatunnel;

namespace {

ScalingSeries series_of(const std::vector<int>& ns, double (*g)(double)) {
  std::vector<double> gs;
  for (int n : ns) gs.push_back(g(static_cast<double>(n)));
  return ScalingSeries::from(ns, gs);
}

std::vector<int> range(int lo, int hi, int step) {
  std::vector<int> out;
  for (int n = lo; n <= hi; n += step) out.push_back(n);
  return out;
}

}  // namespace

TEST(ScalingSeries, LogsAreNatural) {
  const auto s = ScalingSeries::from({10, 20}, {0.5, 0.25});
  EXPECT_DOUBLE_EQ(s.log_n[1], std::log(20.0));
  EXPECT_DOUBLE_EQ(s.log_g[0], std::log(0.5));
}

TEST(ScalingSeries, RejectsBadInput) {
  EXPECT_THROW(ScalingSeries::from({10, 20}, {0.5}), InvalidArgument);
  EXPECT_THROW(ScalingSeries::from({10, 20}, {0.5, 0.0}), InvalidArgument);
  EXPECT_THROW(ScalingSeries::from({0, 20}, {0.5, 0.1}), InvalidArgument);
}

TEST(LogLogFit, PowerLawHasZeroResiduals) {
  const auto fit = loglog_fit(series_of(range(100, 1000, 50), [](double n) { return 3.0 * std::pow(n, -0.7); }));
  EXPECT_NEAR(fit.slope, -0.7, 1e-12);
  EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-10);
  for (double r : fit.residuals) EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(LogLogFit, ExponentialResidualsAreConcaveDown) {
  const auto fit = loglog_fit(series_of(range(100, 1000, 50), [](double n) { return std::exp(-0.01 * n); }));
  const auto& r = fit.residuals;
  EXPECT_LT(r.front(), 0.0);
  EXPECT_LT(r.back(), 0.0);
  EXPECT_GT(r[r.size() / 2], 0.0);
}

TEST(LogLogFit, NeedsTwoDistinctSizes) {
  EXPECT_THROW(loglog_fit(ScalingSeries::from({10}, {0.5})), InvalidArgument);
  EXPECT_THROW(loglog_fit(ScalingSeries::from({10, 10}, {0.5, 0.4})), InvalidArgument);
}

TEST(Curvature, PowerLawIsPolynomialConsistent) {
  const auto v = residual_curvature(series_of(range(100, 2000, 100), [](double n) { return std::pow(n, -0.5); }));
  EXPECT_NEAR(v.mean_curvature, 0.0, 1e-8);
  EXPECT_EQ(v.classification, Classification::PolynomialConsistent);
}

TEST(Curvature, QuadraticResidualGivesTwiceCoefficient) {
  // log g = -0.3 log n + q (log n)^2 so every second derivative equals 2q exactly
  // up to rounding (the three-point formula is exact for quadratics).
  const double q = -0.05;
  const auto ns = std::vector<int>{100, 130, 190, 260, 400, 610, 900, 1500};
  std::vector<double> gs;
  for (int n : ns) {
    const double x = std::log(static_cast<double>(n));
    gs.push_back(std::exp(-0.3 * x + q * x * x));
  }
  const auto v = residual_curvature(ScalingSeries::from(ns, gs));
  ASSERT_EQ(v.second_derivatives.size(), ns.size() - 2);
  for (double d : v.second_derivatives) EXPECT_NEAR(d, 2 * q, 1e-9);
  EXPECT_NEAR(v.mean_curvature, 2 * q, 1e-9);
  EXPECT_NEAR(v.std_error, 0.0, 1e-9);
}

TEST(Curvature, ExponentialDecayIsSuperpolynomial) {
  const auto v = residual_curvature(series_of(range(100, 1000, 60), [](double n) { return std::exp(-0.01 * n); }));
  EXPECT_LT(v.mean_curvature + v.std_error, 0.0);
  EXPECT_EQ(v.classification, Classification::Superpolynomial);
}

TEST(Curvature, NeedsFourIncreasingSizes) {
  EXPECT_THROW(residual_curvature(ScalingSeries::from({10, 20, 30}, {0.5, 0.4, 0.3})), InvalidArgument);
  EXPECT_THROW(residual_curvature(ScalingSeries::from({10, 30, 20, 40}, {0.5, 0.4, 0.3, 0.2})), InvalidArgument);
}

TEST(Classify, SignRules) {
  EXPECT_EQ(classify(-1.0, 0.5), Classification::Superpolynomial);
  EXPECT_EQ(classify(1.0, 0.5), Classification::SubpolynomialTrend);
  EXPECT_EQ(classify(0.3, 0.5), Classification::PolynomialConsistent);
  EXPECT_EQ(classify(-0.5, 0.5), Classification::PolynomialConsistent);
  EXPECT_EQ(to_string(Classification::Superpolynomial), "superpolynomial");
}

TEST(GapScan, RowsFollowSizeOrderForAnyWorkerCount) {
  const std::vector<int> sizes{16, 20, 24, 28};
  const auto a = scan_gap_minima(0.3, 1.0, sizes, {}, 1);
  const auto b = scan_gap_minima(0.3, 1.0, sizes, {}, 3);
  ASSERT_EQ(a.size(), sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    EXPECT_EQ(a[i].n, sizes[i]);
    EXPECT_EQ(a[i].g_min, b[i].g_min);
    EXPECT_EQ(a[i].s_min, b[i].s_min);
  }
}

TEST(AlphaScan, SkipsFamiliesWithTooFewSizes) {
  const std::vector<double> alphas{0.25, 0.5};
  const auto entries = alpha_transition_scan(alphas, 1.0, 100, 400, {}, 1);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_FALSE(entries[0].verdict.has_value());
  EXPECT_FALSE(entries[0].skipped_reason.empty());
  ASSERT_TRUE(entries[1].verdict.has_value());
  EXPECT_EQ(entries[1].verdict->residuals.size(), entries[1].rows.size());
}
