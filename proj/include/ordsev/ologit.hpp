#ifndef ORDSEV_OLOGIT_HPP
#define ORDSEV_OLOGIT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ordsev/design.hpp"
#include "ordsev/error.hpp"
#include "ordsev/logistic.hpp"

namespace ordsev {

/// Slopes and strictly increasing cut-off points of an ordered logit model.
///
/// Parameter vectors elsewhere in this library use the "natural" layout
/// [beta_1..beta_K, cutoff_1..cutoff_{J-1}].
struct OrderedLogitParams {
  Eigen::VectorXd beta;
  Eigen::VectorXd cutoffs;

  std::size_t num_slopes() const { return static_cast<std::size_t>(beta.size()); }
  std::size_t num_classes() const { return static_cast<std::size_t>(cutoffs.size()) + 1; }
  std::size_t num_params() const { return num_slopes() + num_classes() - 1; }

  void validate() const {
    if (cutoffs.size() < 1)
      throw InputError("ordered logit: need at least one cut-off point");
    if (!beta.allFinite() || !cutoffs.allFinite())
      throw InputError("ordered logit: non-finite parameter");
    for (Eigen::Index j = 1; j < cutoffs.size(); ++j)
      if (!(cutoffs[j] > cutoffs[j - 1]))
        throw InputError("ordered logit: cut-off points must be strictly increasing");
  }

  Eigen::VectorXd packed() const {
    Eigen::VectorXd v(beta.size() + cutoffs.size());
    v << beta, cutoffs;
    return v;
  }

  static OrderedLogitParams unpack(const Eigen::VectorXd& v, std::size_t num_slopes) {
    const auto k = static_cast<Eigen::Index>(num_slopes);
    return {v.head(k), v.tail(v.size() - k)};
  }
};

/// Class probabilities for a latent index value x.beta.
inline Eigen::VectorXd class_probabilities_at(double index, const Eigen::VectorXd& cutoffs) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const Eigen::Index classes = cutoffs.size() + 1;
  Eigen::VectorXd p(classes);
  for (Eigen::Index j = 0; j < classes; ++j) {
    const double lo = j == 0 ? -inf : cutoffs[j - 1] - index;
    const double hi = j == classes - 1 ? inf : cutoffs[j] - index;
    p[j] = logistic_cdf_difference(lo, hi);
  }
  return p;
}

template <typename Derived>
Eigen::VectorXd class_probabilities(const Eigen::DenseBase<Derived>& x,
                                    const OrderedLogitParams& params) {
  if (x.size() != params.beta.size())
    throw InputError("class_probabilities: x has " + std::to_string(x.size()) +
                     " entries, model has " + std::to_string(params.beta.size()) +
                     " slopes");
  double index = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) index += x.derived()(k) * params.beta[k];
  return class_probabilities_at(index, params.cutoffs);
}

struct FitOptions {
  double tol_grad = 1e-6;    // max-norm of the natural-parameter gradient
  double tol_ll = 1e-10;     // relative change in log-likelihood
  int max_iter = 200;
  bool hessian_fallback = true;  // gradient step when the Hessian is not negative definite
  bool aggregate = true;         // collapse identical (row, outcome) pairs into weights
};

struct OrderedLogitFit {
  OrderedLogitParams params;
  Eigen::MatrixXd covariance;  // natural layout, (K+J-1)^2
  double log_likelihood = 0.0;
  double null_log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  std::size_t num_observations = 0;
  std::vector<std::string> warnings;
};

namespace detail {

struct Evaluation {
  double log_likelihood = 0.0;
  Eigen::VectorXd gradient;  // natural layout
  Eigen::MatrixXd hessian;   // natural layout
};

enum class Want { Value, Gradient, Hessian };

// One pass over the observations. `weights` empty means unit weights.
inline Evaluation evaluate(const RowMatrix& x, std::span<const int> y,
                           std::span<const double> weights,
                           const OrderedLogitParams& params, Want want) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const Eigen::Index k = params.beta.size();
  const Eigen::Index cuts = params.cutoffs.size();
  const Eigen::Index classes = cuts + 1;
  const Eigen::Index p = k + cuts;
  if (x.cols() != k)
    throw InputError("ordered logit: design has " + std::to_string(x.cols()) +
                     " columns, model has " + std::to_string(k) + " slopes");
  if (static_cast<std::size_t>(x.rows()) != y.size())
    throw InputError("ordered logit: design rows and outcomes differ in length");

  Evaluation ev;
  const bool grad = want != Want::Value;
  const bool hess = want == Want::Hessian;
  if (grad) ev.gradient = Eigen::VectorXd::Zero(p);
  if (hess) ev.hessian = Eigen::MatrixXd::Zero(p, p);
  Eigen::MatrixXd xx;  // accumulates sum of w * s * x x^T for the slope block
  if (hess) xx = Eigen::MatrixXd::Zero(k, k);

  const Eigen::VectorXd eta = x * params.beta;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const int j = y[static_cast<std::size_t>(i)];
    if (j < 0 || j >= classes)
      throw InputError("ordered logit: outcome " + std::to_string(j) + " out of range");
    const double w = weights.empty() ? 1.0 : weights[static_cast<std::size_t>(i)];
    const bool has_lo = j > 0;
    const bool has_hi = j < classes - 1;
    const double a = has_lo ? params.cutoffs[j - 1] - eta[i] : -inf;
    const double b = has_hi ? params.cutoffs[j] - eta[i] : inf;
    const double log_p = log_logistic_cdf_difference(a, b);
    ev.log_likelihood += w * log_p;
    if (!grad) continue;

    // Density-to-probability ratios f(.)/P and f'(.)/P, formed in log space.
    const double ga = has_lo ? std::exp(log_logistic_density(a) - log_p) : 0.0;
    const double gb = has_hi ? std::exp(log_logistic_density(b) - log_p) : 0.0;
    const double ha = has_lo ? -std::tanh(0.5 * a) * ga : 0.0;
    const double hb = has_hi ? -std::tanh(0.5 * b) * gb : 0.0;
    const double dg = gb - ga;
    const auto xi = x.row(i).transpose();

    ev.gradient.head(k).noalias() -= (w * dg) * xi;
    if (has_hi) ev.gradient[k + j] += w * gb;
    if (has_lo) ev.gradient[k + j - 1] -= w * ga;
    if (!hess) continue;

    xx.noalias() += (w * (hb - ha - dg * dg)) * (xi * xi.transpose());
    if (has_hi) {
      const Eigen::Index cj = k + j;
      ev.hessian(cj, cj) += w * (hb - gb * gb);
      ev.hessian.block(0, cj, k, 1).noalias() -= (w * (hb - gb * dg)) * xi;
    }
    if (has_lo) {
      const Eigen::Index cl = k + j - 1;
      ev.hessian(cl, cl) += w * (-ha - ga * ga);
      ev.hessian.block(0, cl, k, 1).noalias() += (w * (ha - ga * dg)) * xi;
    }
    if (has_lo && has_hi) ev.hessian(k + j, k + j - 1) += w * ga * gb;
  }
  if (hess) {
    ev.hessian.topLeftCorner(k, k) = xx;
    // Mirror the blocks filled above into a symmetric matrix.
    for (Eigen::Index c = k; c < p; ++c)
      for (Eigen::Index r = 0; r < k; ++r) ev.hessian(c, r) = ev.hessian(r, c);
    for (Eigen::Index c = k + 1; c < p; ++c)
      ev.hessian(c - 1, c) = ev.hessian(c, c - 1);
  }
  return ev;
}

// Internal parameterization: cutoff_1 = t_1, cutoff_j = cutoff_{j-1} + exp(t_j).
inline Eigen::VectorXd to_internal(const OrderedLogitParams& params) {
  const auto k = params.beta.size();
  const auto cuts = params.cutoffs.size();
  Eigen::VectorXd t(k + cuts);
  t.head(k) = params.beta;
  t[k] = params.cutoffs[0];
  for (Eigen::Index j = 1; j < cuts; ++j)
    t[k + j] = std::log(params.cutoffs[j] - params.cutoffs[j - 1]);
  return t;
}

inline OrderedLogitParams from_internal(const Eigen::VectorXd& t, Eigen::Index k) {
  OrderedLogitParams params;
  params.beta = t.head(k);
  const auto cuts = t.size() - k;
  params.cutoffs.resize(cuts);
  params.cutoffs[0] = t[k];
  for (Eigen::Index j = 1; j < cuts; ++j)
    params.cutoffs[j] = params.cutoffs[j - 1] + std::exp(t[k + j]);
  return params;
}

// d(natural)/d(internal).
inline Eigen::MatrixXd internal_jacobian(const Eigen::VectorXd& t, Eigen::Index k) {
  const auto p = t.size();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(p, p);
  jac.topLeftCorner(k, k).setIdentity();
  for (Eigen::Index c = k; c < p; ++c) {
    jac(c, k) = 1.0;
    for (Eigen::Index m = k + 1; m <= c; ++m) jac(c, m) = std::exp(t[m]);
  }
  return jac;
}

// Hessian in the internal parameterization by the chain rule; the second
// term comes from the curvature of exp(t_m) in every cutoff above m.
inline Eigen::MatrixXd internal_hessian(const Evaluation& ev, const Eigen::VectorXd& t,
                                        Eigen::Index k) {
  const Eigen::MatrixXd jac = internal_jacobian(t, k);
  Eigen::MatrixXd h = jac.transpose() * ev.hessian * jac;
  const auto p = t.size();
  for (Eigen::Index m = k + 1; m < p; ++m)
    h(m, m) += std::exp(t[m]) * ev.gradient.segment(m, p - m).sum();
  return h;
}

struct WeightedSample {
  RowMatrix x;
  std::vector<int> y;
  std::vector<double> w;
};

// Collapses duplicate (row, outcome) pairs. std::map keeps the result
// independent of hash seeds and record order.
inline WeightedSample aggregate(const DesignMatrix& d) {
  std::map<std::pair<std::vector<double>, int>, double> counts;
  std::vector<double> row(d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t c = 0; c < d.cols(); ++c)
      row[c] = d.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
    counts[{row, d.y[i]}] += 1.0;
  }
  WeightedSample s;
  s.x.resize(static_cast<Eigen::Index>(counts.size()), static_cast<Eigen::Index>(d.cols()));
  Eigen::Index r = 0;
  for (const auto& [key, n] : counts) {
    for (std::size_t c = 0; c < d.cols(); ++c)
      s.x(r, static_cast<Eigen::Index>(c)) = key.first[c];
    s.y.push_back(key.second);
    s.w.push_back(n);
    ++r;
  }
  return s;
}

inline std::vector<double> class_counts(std::span<const int> y, std::size_t classes) {
  std::vector<double> n(classes, 0.0);
  for (int v : y) {
    if (v < 0 || static_cast<std::size_t>(v) >= classes)
      throw InputError("outcome " + std::to_string(v) + " out of range");
    n[static_cast<std::size_t>(v)] += 1.0;
  }
  return n;
}

inline void require_all_classes(const std::vector<double>& counts) {
  for (std::size_t j = 0; j < counts.size(); ++j)
    if (counts[j] == 0.0)
      throw InputError("outcome class " + std::to_string(j) +
                       " is absent; every class must be observed");
}

// Intercept-only optimum: sum_j n_j log(n_j / N).
inline double null_log_likelihood_from_counts(const std::vector<double>& counts) {
  require_all_classes(counts);
  double total = 0.0;
  for (double n : counts) total += n;
  double ll = 0.0;
  for (double n : counts) ll += n * std::log(n / total);
  return ll;
}

}  // namespace detail

inline double log_likelihood(const DesignMatrix& design, const OrderedLogitParams& params) {
  return detail::evaluate(design.x, design.y, {}, params, detail::Want::Value).log_likelihood;
}

/// Analytic score in the natural layout.
inline Eigen::VectorXd gradient(const DesignMatrix& design, const OrderedLogitParams& params) {
  return detail::evaluate(design.x, design.y, {}, params, detail::Want::Gradient).gradient;
}

/// Analytic Hessian of the log-likelihood in the natural layout.
inline Eigen::MatrixXd hessian(const DesignMatrix& design, const OrderedLogitParams& params) {
  return detail::evaluate(design.x, design.y, {}, params, detail::Want::Hessian).hessian;
}

/// Cut-offs at the logits of the cumulative class shares: the exact
/// intercept-only optimum.
inline Eigen::VectorXd null_cutoffs(std::span<const int> y, std::size_t classes) {
  auto counts = detail::class_counts(y, classes);
  detail::require_all_classes(counts);
  double total = 0.0;
  for (double n : counts) total += n;
  Eigen::VectorXd c(static_cast<Eigen::Index>(classes - 1));
  double cum = 0.0;
  for (std::size_t j = 0; j + 1 < classes; ++j) {
    cum += counts[j];
    c[static_cast<Eigen::Index>(j)] = std::log(cum / (total - cum));
  }
  return c;
}

/// Maximum-likelihood fit by Newton's method with backtracking.
///
/// Cut-offs are optimized in the increment parameterization so ordering
/// holds at every iterate; estimates and covariance are reported in the
/// natural layout. A fit that exhausts max_iter is returned with
/// converged == false rather than thrown.
inline OrderedLogitFit fit(const DesignMatrix& design, const FitOptions& options = {}) {
  const std::size_t classes = design.num_classes;
  if (classes < 2) throw InputError("fit: need at least 2 outcome classes");
  const Eigen::Index k = static_cast<Eigen::Index>(design.cols());
  const Eigen::Index p = k + static_cast<Eigen::Index>(classes) - 1;
  if (design.y.size() != design.rows())
    throw InputError("fit: design rows and outcomes differ in length");
  if (design.rows() < static_cast<std::size_t>(p))
    throw InputError("fit: " + std::to_string(design.rows()) + " observations for " +
                     std::to_string(p) + " parameters");

  const auto counts = detail::class_counts(design.y, classes);
  detail::require_all_classes(counts);

  OrderedLogitFit result;
  result.num_observations = design.rows();
  result.null_log_likelihood = detail::null_log_likelihood_from_counts(counts);

  for (Eigen::Index c = 0; c < k; ++c) {
    int lo = std::numeric_limits<int>::max(), hi = -1;
    bool any = false;
    for (std::size_t i = 0; i < design.rows(); ++i) {
      if (design.x(static_cast<Eigen::Index>(i), c) == 0.0) continue;
      any = true;
      lo = std::min(lo, design.y[i]);
      hi = std::max(hi, design.y[i]);
    }
    const std::string name = static_cast<std::size_t>(c) < design.columns.size()
                                 ? design.columns[static_cast<std::size_t>(c)].label()
                                 : "column " + std::to_string(c);
    if (!any)
      result.warnings.push_back("column '" + name + "' is identically zero");
    else if (lo == hi && (lo == 0 || hi == static_cast<int>(classes) - 1))
      result.warnings.push_back("separation: column '" + name +
                                "' perfectly predicts boundary class " +
                                std::to_string(lo));
  }

  detail::WeightedSample agg;
  const RowMatrix* x = &design.x;
  std::span<const int> y = design.y;
  std::span<const double> w;
  if (options.aggregate) {
    agg = detail::aggregate(design);
    x = &agg.x;
    y = agg.y;
    w = agg.w;
  }
  auto eval = [&](const Eigen::VectorXd& t, detail::Want want) {
    return detail::evaluate(*x, y, w, detail::from_internal(t, k), want);
  };

  OrderedLogitParams start;
  start.beta = Eigen::VectorXd::Zero(k);
  start.cutoffs = null_cutoffs(design.y, classes);
  Eigen::VectorXd t = detail::to_internal(start);
  detail::Evaluation ev = eval(t, detail::Want::Hessian);
  double grad_norm = ev.gradient.lpNorm<Eigen::Infinity>();
  int iter = 0;
  bool converged = grad_norm < options.tol_grad;

  while (!converged && iter < options.max_iter) {
    ++iter;
    const Eigen::MatrixXd jac = detail::internal_jacobian(t, k);
    const Eigen::VectorXd g = jac.transpose() * ev.gradient;
    const Eigen::MatrixXd neg_h = -detail::internal_hessian(ev, t, k);
    Eigen::VectorXd step;
    Eigen::LLT<Eigen::MatrixXd> llt(neg_h);
    if (llt.info() == Eigen::Success) {
      step = llt.solve(g);
    } else if (options.hessian_fallback) {
      const double scale = std::max(1.0, neg_h.diagonal().cwiseAbs().maxCoeff());
      step = g / scale;
    } else {
      throw NumericalError("fit: Hessian is not negative definite at iteration " +
                           std::to_string(iter));
    }

    const double slope = g.dot(step);
    double t_len = 1.0;
    double ll_new = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd t_new;
    for (int half = 0; half < 60; ++half) {
      t_new = t + t_len * step;
      ll_new = eval(t_new, detail::Want::Value).log_likelihood;
      if (std::isfinite(ll_new) && ll_new >= ev.log_likelihood + 1e-4 * t_len * slope)
        break;
      t_len *= 0.5;
    }
    if (!(std::isfinite(ll_new) && ll_new >= ev.log_likelihood)) {
      // No ascent possible along the step: at the numerical optimum.
      converged = grad_norm < options.tol_grad;
      break;
    }
    const double delta = ll_new - ev.log_likelihood;
    t = t_new;
    ev = eval(t, detail::Want::Hessian);
    grad_norm = ev.gradient.lpNorm<Eigen::Infinity>();
    converged = grad_norm < options.tol_grad &&
                std::fabs(delta) <= options.tol_ll * std::max(1.0, std::fabs(ev.log_likelihood));
  }

  result.params = detail::from_internal(t, k);
  result.log_likelihood = ev.log_likelihood;
  result.iterations = iter;
  result.converged = converged;
  result.gradient_norm = grad_norm;

  // Delta method: Cov_natural = J (-H_internal)^{-1} J^T.
  const Eigen::MatrixXd jac = detail::internal_jacobian(t, k);
  const Eigen::MatrixXd neg_h = -detail::internal_hessian(ev, t, k);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(neg_h);
  if (!lu.isInvertible())
    throw NumericalError("fit: singular Hessian at the estimate; the model is not "
                         "identified (check for empty or collinear columns)");
  Eigen::MatrixXd cov = jac * lu.inverse() * jac.transpose();
  result.covariance = 0.5 * (cov + cov.transpose());
  if (!result.covariance.allFinite())
    throw NumericalError("fit: non-finite covariance");
  return result;
}

}  // namespace ordsev

#endif  // ORDSEV_OLOGIT_HPP
