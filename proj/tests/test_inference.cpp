#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace ordsev;
using namespace ordsev::testing;

TEST(NullLogLikelihood, SeverityTotals) {
  std::vector<int> y;
  y.insert(y.end(), 6486, 0);
  y.insert(y.end(), 31926, 1);
  y.insert(y.end(), 421, 2);
  EXPECT_NEAR(null_log_likelihood(y, 3), -19764.969947894482, 1e-8);
}

TEST(NullLogLikelihood, BalancedBinary) {
  std::vector<int> y(200, 0);
  for (std::size_t i = 0; i < 100; ++i) y[i] = 1;
  EXPECT_NEAR(null_log_likelihood(y, 2), 200 * std::log(0.5), 1e-10);
  EXPECT_THROW(null_log_likelihood(std::vector<int>(5, 0), 2), InputError);
}

TEST(LrTest, StatisticAndTail) {
  const auto t = lr_test(-90.0, -100.0, 2);
  EXPECT_DOUBLE_EQ(t.chi_square, 20.0);
  EXPECT_EQ(t.df, 2);
  EXPECT_NEAR(t.p_value, std::exp(-10.0), 1e-16);
}

TEST(LrTest, RoundingBelowNullIsClampedAndRealDeficitThrows) {
  EXPECT_EQ(lr_test(-100.0 - 1e-12, -100.0, 3).chi_square, 0.0);
  EXPECT_EQ(lr_test(-100.0, -100.0, 3).p_value, 1.0);
  EXPECT_THROW(lr_test(-101.0, -100.0, 3), NumericalError);
  EXPECT_THROW(lr_test(-90.0, -100.0, 0), InputError);
}

TEST(McFadden, Examples) {
  EXPECT_DOUBLE_EQ(mcfadden_rho2(-75.0, -100.0), 0.25);
  EXPECT_EQ(mcfadden_rho2(-100.0, -100.0), 0.0);
  EXPECT_THROW(mcfadden_rho2(-1.0, 0.0), InputError);
}

TEST(McFadden, ConsistentWithLrStatistic) {
  // chi2 = -2 rho2 LL0 for any nested pair.
  const double ll0 = -19765.668202764977, ll = ll0 + 8578.3 / 2;
  const auto t = lr_test(ll, ll0, 14);
  EXPECT_NEAR(t.chi_square, -2.0 * mcfadden_rho2(ll, ll0) * ll0, 1e-9);
  EXPECT_NEAR(mcfadden_rho2(ll, ll0), 0.217, 5e-4);
}

TEST(Significance, Thresholds) {
  EXPECT_EQ(significance_of(2.553 / 0.087), Significance::P99);
  EXPECT_EQ(significance_of(0.091 / 0.050), Significance::P90);
  EXPECT_EQ(significance_of(-2.0), Significance::P95);
  EXPECT_EQ(significance_of(1.6), Significance::None);
  EXPECT_EQ(significance_of(1.645), Significance::P90);
  EXPECT_STREQ(stars(Significance::P99), "***");
  EXPECT_STREQ(stars(Significance::P95), "**");
  EXPECT_STREQ(stars(Significance::P90), "*");
  EXPECT_STREQ(stars(Significance::None), "");
}

TEST(Report, RowsLayoutAndStatistics) {
  std::mt19937_64 rng(2);
  const auto truth = random_params(rng, 4, 3);
  const auto d = random_design(rng, 2000, 4, truth);
  const auto f = fit(d);
  const auto rep = report(f, d.columns);
  ASSERT_EQ(rep.rows.size(), 6u);
  EXPECT_EQ(rep.rows[0].group, "Thresholds");
  EXPECT_EQ(rep.rows[1].label, "Cut-off Point 2");
  EXPECT_TRUE(rep.rows[1].is_cutoff);
  EXPECT_FALSE(rep.rows[2].is_cutoff);
  EXPECT_EQ(rep.rows[2].group, d.columns[0].variable_name);
  for (std::size_t r = 0; r < rep.rows.size(); ++r) {
    const auto& row = rep.rows[r];
    EXPECT_NEAR(row.t_statistic * row.standard_error, row.estimate, 1e-12);
    EXPECT_EQ(row.significance, significance_of(row.t_statistic));
  }
  EXPECT_EQ(rep.lr.df, 4);
  EXPECT_NEAR(rep.lr.chi_square, 2 * (f.log_likelihood - f.null_log_likelihood), 1e-9);
  EXPECT_NEAR(rep.lr.chi_square, -2 * rep.mcfadden_rho2 * rep.null_log_likelihood, 1e-7);
}

TEST(Report, NegativeVarianceIsNumericalError) {
  std::mt19937_64 rng(2);
  const auto truth = random_params(rng, 2, 3);
  const auto d = random_design(rng, 500, 2, truth);
  auto f = fit(d);
  f.covariance(0, 0) = -1.0;
  EXPECT_THROW(report(f, d.columns), NumericalError);
  EXPECT_THROW(report(fit(d), std::span<const DesignColumn>{}), InputError);
}
