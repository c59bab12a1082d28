#ifndef ORDSEV_CONTINGENCY_HPP
#define ORDSEV_CONTINGENCY_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ordsev/dataset.hpp"
#include "ordsev/error.hpp"
#include "ordsev/special.hpp"

namespace ordsev {

/// R x C table of counts with axis labels.
struct CountTable {
  std::string row_variable;
  std::string col_variable;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Eigen::MatrixXd counts;

  CountTable transposed() const {
    return {col_variable, row_variable, col_labels, row_labels, counts.transpose()};
  }
};

struct ContingencyResult {
  CountTable observed;
  Eigen::MatrixXd expected;
  Eigen::MatrixXd residuals;
  Eigen::MatrixXd cell_frequency_pct;
  double chi_square = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::vector<std::string> warnings;
};

namespace detail {

struct Axis {
  std::string name;
  std::vector<std::string> labels;
  bool is_outcome = false;
  std::size_t index = 0;
};

inline Axis resolve_axis(const CategoricalSchema& s, const std::string& name) {
  if (name == s.outcome_name) return {name, s.outcome, true, 0};
  auto v = s.variable_index(name);
  if (!v) throw InputError("unknown variable '" + name + "'");
  return {name, s.variables[*v].categories, false, *v};
}

inline void check_counts(const Eigen::MatrixXd& observed) {
  for (Eigen::Index r = 0; r < observed.rows(); ++r)
    for (Eigen::Index c = 0; c < observed.cols(); ++c)
      if (!(observed(r, c) >= 0.0) || !std::isfinite(observed(r, c)))
        throw InputError("contingency: counts must be finite and non-negative");
}

}  // namespace detail

/// Cross-tabulates two variables; either may be the outcome column.
inline CountTable observed_table(const Dataset& ds, const std::string& var_a,
                                 const std::string& var_b) {
  const auto& s = ds.schema();
  auto a = detail::resolve_axis(s, var_a);
  auto b = detail::resolve_axis(s, var_b);
  CountTable t{a.name, b.name, a.labels, b.labels,
               Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.labels.size()),
                                     static_cast<Eigen::Index>(b.labels.size()))};
  auto code = [&](const detail::Axis& ax, std::size_t i) -> Eigen::Index {
    return ax.is_outcome ? ds.severity(i) : ds.category(i, ax.index);
  };
  for (std::size_t i = 0; i < ds.size(); ++i) t.counts(code(a, i), code(b, i)) += 1.0;
  return t;
}

/// E(r,c) = row_total(r) * col_total(c) / grand_total.
inline Eigen::MatrixXd expected_counts(const Eigen::MatrixXd& observed) {
  detail::check_counts(observed);
  const double total = observed.sum();
  if (!(total > 0.0)) throw InputError("expected_counts: zero grand total");
  Eigen::VectorXd rows = observed.rowwise().sum();
  Eigen::RowVectorXd cols = observed.colwise().sum();
  return (rows * cols) / total;
}

/// Pearson residuals (O - E) / sqrt(E); positive where a cell is
/// over-represented relative to independence.
inline Eigen::MatrixXd pearson_residuals(const Eigen::MatrixXd& observed) {
  Eigen::MatrixXd e = expected_counts(observed);
  if ((e.array() <= 0.0).any())
    throw InputError("pearson_residuals: a cell has zero expected count "
                     "(empty row or column)");
  return ((observed - e).array() / e.array().sqrt()).matrix();
}

inline ContingencyResult chi_square_test(const CountTable& observed) {
  const auto& o = observed.counts;
  if (o.rows() < 2 || o.cols() < 2)
    throw InputError("chi_square_test: degenerate table (" +
                     std::to_string(o.rows()) + "x" + std::to_string(o.cols()) +
                     "), need at least 2x2");
  ContingencyResult res;
  res.observed = observed;
  res.expected = expected_counts(o);
  res.residuals = pearson_residuals(o);
  res.cell_frequency_pct = 100.0 * o / o.sum();
  res.chi_square = res.residuals.squaredNorm();
  res.df = static_cast<int>((o.rows() - 1) * (o.cols() - 1));
  res.p_value = chi_square_upper_tail(res.chi_square, res.df);
  const auto small = (res.expected.array() < 5.0).count();
  if (small > 0)
    res.warnings.push_back(std::to_string(small) +
                           " cell(s) have expected count below 5; the chi-square "
                           "approximation may be unreliable");
  return res;
}

inline ContingencyResult chi_square_test(const Eigen::MatrixXd& observed) {
  CountTable t;
  t.counts = observed;
  for (Eigen::Index r = 0; r < observed.rows(); ++r)
    t.row_labels.push_back(std::to_string(r));
  for (Eigen::Index c = 0; c < observed.cols(); ++c)
    t.col_labels.push_back(std::to_string(c));
  return chi_square_test(t);
}

}  // namespace ordsev

#endif  // ORDSEV_CONTINGENCY_HPP
