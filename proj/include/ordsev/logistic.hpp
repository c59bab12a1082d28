#ifndef ORDSEV_LOGISTIC_HPP
#define ORDSEV_LOGISTIC_HPP

#include <cmath>
#include <limits>

namespace ordsev {

/// Standard logistic CDF 1 / (1 + e^-z), evaluated on the branch where the
/// exponential cannot overflow.
inline double logistic_cdf(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + e^z) without overflow.
inline double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

/// log F(z) = -softplus(-z).
inline double log_logistic_cdf(double z) { return -softplus(-z); }

/// log f(z) where f = F(1 - F) is the logistic density.
inline double log_logistic_density(double z) {
  return -softplus(z) - softplus(-z);
}

/// F(b) - F(a) for a <= b, either endpoint possibly infinite.
///
/// When both points sit in one tail the difference is formed from the
/// complementary tail, (e^-a - e^-b) / ((1 + e^-a)(1 + e^-b)) with a, b >= 0
/// (mirrored for b <= 0), so it is non-negative by construction and keeps full
/// relative precision far into the tails.
inline double logistic_cdf_difference(double a, double b) {
  if (!(a < b)) return 0.0;
  if (a >= 0.0) {
    const double ea = std::exp(-a);
    const double eb = std::exp(-b);
    // -expm1(a - b) = 1 - e^{-(b-a)}; keeps precision when b is close to a.
    return ea * -std::expm1(a - b) / ((1.0 + ea) * (1.0 + eb));
  }
  if (b <= 0.0) return logistic_cdf_difference(-b, -a);
  return 1.0 - logistic_cdf(a) - logistic_cdf(-b);
}

/// log(F(b) - F(a)) for a < b, finite even when the difference is far below
/// the smallest double. Returns -infinity only when a >= b.
inline double log_logistic_cdf_difference(double a, double b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (!(a < b)) return -inf;
  if (a == -inf) return log_logistic_cdf(b);
  if (b == inf) return log_logistic_cdf(-a);
  if (a >= 0.0)
    return -a + std::log(-std::expm1(a - b)) - softplus(-a) - softplus(-b);
  if (b <= 0.0) return log_logistic_cdf_difference(-b, -a);
  return std::log(logistic_cdf_difference(a, b));
}

}  // namespace ordsev

#endif  // ORDSEV_LOGISTIC_HPP
