#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "support.hpp"

using namespace ordsev;
using ordsev::testing::BigFloat;
using ordsev::testing::big_logistic;

TEST(LogisticCdf, CentreAndOracleValues) {
  EXPECT_EQ(logistic_cdf(0.0), 0.5);
  EXPECT_NEAR(logistic_cdf(-0.357), 0.41168597483912693, 1e-16);
  EXPECT_NEAR(logistic_cdf(6.348), 0.99825281387589330, 1e-16);
}

TEST(LogisticCdf, MatchesExtendedPrecisionAcrossRange) {
  for (double z = -700.0; z <= 700.0; z += 3.7) {
    const double want = static_cast<double>(big_logistic(BigFloat(z)));
    const double got = logistic_cdf(z);
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, 1.0);
    if (want > 1e-300) {
      EXPECT_NEAR(got / want - 1.0, 0.0, 1e-13) << z;
    }
  }
}

TEST(LogLogisticCdf, NoUnderflowInTheTail) {
  EXPECT_NEAR(log_logistic_cdf(-700.0), -700.0, 1e-12);
  EXPECT_NEAR(log_logistic_cdf(-30.0), static_cast<double>(log(big_logistic(BigFloat(-30)))),
              1e-13);
  EXPECT_NEAR(log_logistic_cdf(40.0), -std::exp(-40.0), 1e-30);
  EXPECT_NEAR(log_logistic_density(0.0), std::log(0.25), 1e-15);
}

TEST(LogisticCdfDifference, MatchesExtendedPrecision) {
  const double pts[] = {-710, -40, -5, -1, -0.357, 0, 0.2, 3, 6.348, 35, 710};
  for (double a : pts)
    for (double b : pts) {
      if (!(a < b)) continue;
      const BigFloat want = big_logistic(BigFloat(b)) - big_logistic(BigFloat(a));
      const double got = logistic_cdf_difference(a, b);
      EXPECT_GE(got, 0.0) << a << " " << b;
      const double w = static_cast<double>(want);
      if (w > 1e-300) {
        EXPECT_NEAR(got / w - 1.0, 0.0, 1e-12) << a << " " << b;
        EXPECT_NEAR(log_logistic_cdf_difference(a, b), static_cast<double>(log(want)),
                    1e-11 * std::max(1.0, std::fabs(static_cast<double>(log(want)))))
            << a << " " << b;
      }
    }
}

TEST(LogisticCdfDifference, InfiniteEnds) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(logistic_cdf_difference(-inf, inf), 1.0);
  EXPECT_NEAR(logistic_cdf_difference(-inf, -0.357), 0.41168597483912693, 1e-16);
  EXPECT_NEAR(log_logistic_cdf_difference(6.348, inf), std::log(0.0017471861241067028),
              1e-12);
  EXPECT_NEAR(log_logistic_cdf_difference(-inf, -800.0), -800.0, 1e-9);
}
