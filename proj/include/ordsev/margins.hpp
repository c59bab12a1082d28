#ifndef ORDSEV_MARGINS_HPP
#define ORDSEV_MARGINS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ordsev/design.hpp"
#include "ordsev/error.hpp"
#include "ordsev/ologit.hpp"

namespace ordsev {

/// Average discrete-change effect of moving `column`'s variable from its
/// reference group to the column's category.
///
/// For each row both counterfactuals zero every dummy of the variable; the
/// treated one then sets `column` to 1. Row contributions are averaged with
/// `weights` when given (frequency weights), otherwise uniformly.
inline Eigen::VectorXd average_marginal_effect(const OrderedLogitParams& params,
                                               const DesignMatrix& design,
                                               std::size_t column,
                                               std::span<const double> weights = {}) {
  if (column >= design.cols())
    throw InputError("average_marginal_effect: column " + std::to_string(column) +
                     " out of range");
  if (params.num_slopes() != design.cols())
    throw InputError("average_marginal_effect: model and design disagree on K");
  if (!weights.empty() && weights.size() != design.rows())
    throw InputError("average_marginal_effect: weights length mismatch");

  const auto classes = static_cast<Eigen::Index>(params.num_classes());
  Eigen::VectorXd total = Eigen::VectorXd::Zero(classes);
  if (design.rows() == 0) return total;

  const auto group = design.group_of(column);
  const auto c = static_cast<Eigen::Index>(column);
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < design.rows(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    double base_index = design.x.row(row).dot(params.beta);
    for (auto g : group)
      base_index -= design.x(row, static_cast<Eigen::Index>(g)) *
                    params.beta[static_cast<Eigen::Index>(g)];
    const double w = weights.empty() ? 1.0 : weights[i];
    total += w * (class_probabilities_at(base_index + params.beta[c], params.cutoffs) -
                  class_probabilities_at(base_index, params.cutoffs));
    weight_sum += w;
  }
  return total / weight_sum;
}

inline Eigen::VectorXd average_marginal_effect(const OrderedLogitFit& fit,
                                               const DesignMatrix& design,
                                               const std::string& column) {
  auto idx = design.find_column(column);
  if (!idx) throw InputError("average_marginal_effect: unknown column '" + column + "'");
  return average_marginal_effect(fit.params, design, *idx);
}

struct MarginalEffectRow {
  std::string variable;
  std::string category;
  Eigen::VectorXd effects;  // one entry per outcome class
  double coefficient = 0.0;

  double row_sum() const { return effects.sum(); }
};

struct MarginalEffectsTable {
  std::vector<std::string> class_labels;
  std::vector<MarginalEffectRow> rows;
};

inline MarginalEffectsTable margins_table(const OrderedLogitParams& params,
                                          const DesignMatrix& design,
                                          std::vector<std::string> class_labels = {}) {
  MarginalEffectsTable t;
  t.class_labels = std::move(class_labels);
  for (std::size_t c = 0; c < design.cols(); ++c)
    t.rows.push_back({design.columns[c].variable_name, design.columns[c].category_label,
                      average_marginal_effect(params, design, c),
                      params.beta[static_cast<Eigen::Index>(c)]});
  return t;
}

inline MarginalEffectsTable margins_table(const OrderedLogitFit& fit,
                                          const DesignMatrix& design,
                                          std::vector<std::string> class_labels = {}) {
  return margins_table(fit.params, design, std::move(class_labels));
}

}  // namespace ordsev

#endif  // ORDSEV_MARGINS_HPP
