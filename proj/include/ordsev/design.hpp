#ifndef ORDSEV_DESIGN_HPP
#define ORDSEV_DESIGN_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ordsev/dataset.hpp"
#include "ordsev/schema.hpp"

namespace ordsev {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct DesignColumn {
  std::size_t variable = 0;  // index into schema variables
  std::size_t category = 0;  // index into that variable's categories
  std::string variable_name;
  std::string category_label;

  /// "Variable: Category", the label used in reports and --column lookups.
  std::string label() const { return variable_name + ": " + category_label; }
};

/// Dummy-coded regressors and ordinal outcome.
struct DesignMatrix {
  RowMatrix x;
  std::vector<int> y;
  std::vector<DesignColumn> columns;
  std::size_t num_classes = 0;

  std::size_t rows() const { return static_cast<std::size_t>(x.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(x.cols()); }

  std::optional<std::size_t> find_column(std::string_view label) const {
    for (std::size_t k = 0; k < columns.size(); ++k)
      if (columns[k].label() == label) return k;
    // Bare category labels resolve only when unambiguous.
    std::optional<std::size_t> hit;
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (columns[k].category_label != label) continue;
      if (hit) return std::nullopt;
      hit = k;
    }
    return hit;
  }

  /// Columns belonging to the same variable as `k`, including `k` itself.
  std::vector<std::size_t> group_of(std::size_t k) const {
    std::vector<std::size_t> g;
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c].variable == columns[k].variable) g.push_back(c);
    return g;
  }
};

inline std::vector<DesignColumn> design_columns(const CategoricalSchema& s) {
  std::vector<DesignColumn> cols;
  for (std::size_t v = 0; v < s.variables.size(); ++v) {
    const auto& var = s.variables[v];
    for (const auto& label : var.selected)
      cols.push_back({v, *var.find(label), var.name, label});
  }
  return cols;
}

inline DesignMatrix encode_design(const Dataset& ds, const CategoricalSchema& schema) {
  if (!(ds.schema() == schema))
    throw InputError("encode_design: dataset was not parsed with this schema");
  DesignMatrix d;
  d.columns = design_columns(schema);
  d.num_classes = schema.num_classes();
  d.x = RowMatrix::Zero(static_cast<Eigen::Index>(ds.size()),
                        static_cast<Eigen::Index>(d.columns.size()));
  d.y = ds.severities();
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t k = 0; k < d.columns.size(); ++k)
      if (ds.category(i, d.columns[k].variable) == d.columns[k].category)
        d.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = 1.0;
  return d;
}

}  // namespace ordsev

#endif  // ORDSEV_DESIGN_HPP
