#ifndef ORDSEV_INFERENCE_HPP
#define ORDSEV_INFERENCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ordsev/design.hpp"
#include "ordsev/error.hpp"
#include "ordsev/ologit.hpp"
#include "ordsev/special.hpp"

namespace ordsev {

/// Log-likelihood of the intercept-only ordered logit at its optimum.
inline double null_log_likelihood(std::span<const int> y, std::size_t classes) {
  return detail::null_log_likelihood_from_counts(detail::class_counts(y, classes));
}

struct LrTest {
  double chi_square = 0.0;
  int df = 0;
  double p_value = 1.0;
};

namespace detail {

// Rounding can leave a converged fit a hair below the null optimum.
inline double clamp_nested(double fit_ll, double null_ll) {
  if (fit_ll < null_ll && null_ll - fit_ll <= 1e-9 * std::max(1.0, std::fabs(null_ll)))
    return null_ll;
  return fit_ll;
}

}  // namespace detail

inline LrTest lr_test(double fit_ll, double null_ll, int df) {
  fit_ll = detail::clamp_nested(fit_ll, null_ll);
  if (!(fit_ll >= null_ll))
    throw NumericalError("lr_test: fitted log-likelihood " + std::to_string(fit_ll) +
                         " is below the null model's " + std::to_string(null_ll) +
                         "; the fit failed");
  if (df < 1) throw InputError("lr_test: df must be at least 1");
  LrTest t;
  t.chi_square = 2.0 * (fit_ll - null_ll);
  t.df = df;
  t.p_value = chi_square_upper_tail(t.chi_square, df);
  return t;
}

/// McFadden's 1 - LL_fit / LL_null.
inline double mcfadden_rho2(double fit_ll, double null_ll) {
  if (!(null_ll < 0.0)) throw InputError("mcfadden_rho2: null log-likelihood must be negative");
  fit_ll = detail::clamp_nested(fit_ll, null_ll);
  if (!(fit_ll >= null_ll))
    throw NumericalError("mcfadden_rho2: fitted log-likelihood is below the null model's");
  return 1.0 - fit_ll / null_ll;
}

enum class Significance { None, P90, P95, P99 };

// Two-sided normal critical values.
inline Significance significance_of(double t) {
  const double a = std::fabs(t);
  if (a >= 2.576) return Significance::P99;
  if (a >= 1.960) return Significance::P95;
  if (a >= 1.645) return Significance::P90;
  return Significance::None;
}

inline const char* stars(Significance s) {
  switch (s) {
    case Significance::P99: return "***";
    case Significance::P95: return "**";
    case Significance::P90: return "*";
    case Significance::None: break;
  }
  return "";
}

struct FitReportRow {
  std::string group;  // variable name, or "Thresholds"
  std::string label;  // category, or "Cut-off Point j"
  double estimate = 0.0;
  double standard_error = 0.0;
  double t_statistic = 0.0;
  Significance significance = Significance::None;
  bool is_cutoff = false;
};

struct FitReport {
  std::vector<FitReportRow> rows;  // cut-offs first, then slopes
  LrTest lr;
  double mcfadden_rho2 = 0.0;
  double log_likelihood = 0.0;
  double null_log_likelihood = 0.0;
  std::size_t num_observations = 0;
  int iterations = 0;
  bool converged = false;
};

inline FitReportRow make_report_row(std::string group, std::string label, double estimate,
                                    double variance, bool is_cutoff) {
  if (variance < 0.0 || std::isnan(variance))
    throw NumericalError("report: negative variance for '" + label +
                         "' (numerical failure in the covariance)");
  FitReportRow r{std::move(group), std::move(label), estimate, std::sqrt(variance), 0.0,
                 Significance::None, is_cutoff};
  r.t_statistic = r.standard_error > 0.0 ? estimate / r.standard_error : 0.0;
  r.significance = significance_of(r.t_statistic);
  return r;
}

inline FitReport report(const OrderedLogitFit& fit, std::span<const DesignColumn> columns) {
  const auto k = static_cast<Eigen::Index>(fit.params.num_slopes());
  const auto cuts = fit.params.cutoffs.size();
  if (columns.size() != static_cast<std::size_t>(k))
    throw InputError("report: " + std::to_string(columns.size()) + " labels for " +
                     std::to_string(k) + " slopes");
  if (fit.covariance.rows() != k + cuts || fit.covariance.cols() != k + cuts)
    throw InputError("report: covariance has the wrong shape");
  FitReport rep;
  for (Eigen::Index j = 0; j < cuts; ++j)
    rep.rows.push_back(make_report_row("Thresholds", "Cut-off Point " + std::to_string(j + 1),
                                       fit.params.cutoffs[j],
                                       fit.covariance(k + j, k + j), true));
  for (Eigen::Index c = 0; c < k; ++c) {
    const auto& col = columns[static_cast<std::size_t>(c)];
    rep.rows.push_back(make_report_row(col.variable_name, col.category_label,
                                       fit.params.beta[c], fit.covariance(c, c), false));
  }
  rep.log_likelihood = fit.log_likelihood;
  rep.null_log_likelihood = fit.null_log_likelihood;
  rep.num_observations = fit.num_observations;
  rep.iterations = fit.iterations;
  rep.converged = fit.converged;
  if (k > 0) {
    rep.lr = lr_test(fit.log_likelihood, fit.null_log_likelihood, static_cast<int>(k));
  } else {
    rep.lr = {2.0 * (detail::clamp_nested(fit.log_likelihood, fit.null_log_likelihood) -
                     fit.null_log_likelihood),
              0, 1.0};
  }
  rep.mcfadden_rho2 = mcfadden_rho2(fit.log_likelihood, fit.null_log_likelihood);
  return rep;
}

}  // namespace ordsev

#endif  // ORDSEV_INFERENCE_HPP
