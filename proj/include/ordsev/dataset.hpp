#ifndef ORDSEV_DATASET_HPP
#define ORDSEV_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordsev/csv.hpp"
#include "ordsev/error.hpp"
#include "ordsev/schema.hpp"

namespace ordsev {

using SchemaPtr = std::shared_ptr<const CategoricalSchema>;

/// Parsed observations. Category codes are stored row-major, one per schema
/// variable, so record i occupies codes[i*V, (i+1)*V).
class Dataset {
 public:
  explicit Dataset(SchemaPtr schema) : schema_(std::move(schema)) {
    if (!schema_) throw InputError("dataset: null schema");
  }

  const CategoricalSchema& schema() const { return *schema_; }
  const SchemaPtr& schema_ptr() const { return schema_; }

  std::size_t size() const { return severity_.size(); }
  bool empty() const { return severity_.empty(); }
  std::size_t num_variables() const { return schema_->variables.size(); }

  int severity(std::size_t i) const { return severity_[i]; }
  std::uint32_t category(std::size_t i, std::size_t var) const {
    return codes_[i * num_variables() + var];
  }
  std::span<const std::uint32_t> categories(std::size_t i) const {
    return {codes_.data() + i * num_variables(), num_variables()};
  }
  const std::vector<int>& severities() const { return severity_; }

  void add_record(int severity, std::span<const std::uint32_t> codes) {
    if (severity < 0 || static_cast<std::size_t>(severity) >= schema_->num_classes())
      throw InputError("dataset: severity index " + std::to_string(severity) +
                       " out of range");
    if (codes.size() != num_variables())
      throw InputError("dataset: record has " + std::to_string(codes.size()) +
                       " covariates, schema declares " +
                       std::to_string(num_variables()));
    for (std::size_t v = 0; v < codes.size(); ++v)
      if (codes[v] >= schema_->variables[v].categories.size())
        throw InputError("dataset: category index out of range for variable '" +
                         schema_->variables[v].name + "'");
    severity_.push_back(severity);
    codes_.insert(codes_.end(), codes.begin(), codes.end());
  }

  void reserve(std::size_t n) {
    severity_.reserve(n);
    codes_.reserve(n * num_variables());
  }

  std::size_t dropped_count = 0;
  std::vector<std::string> warnings;

  std::size_t input_rows() const { return size() + dropped_count; }

 private:
  SchemaPtr schema_;
  std::vector<int> severity_;
  std::vector<std::uint32_t> codes_;
};

enum class UnknownPolicy { Drop, MapToCategory, Reject };

struct IngestOptions {
  UnknownPolicy policy = UnknownPolicy::Drop;
  /// Category that receives unknown covariate labels under MapToCategory.
  /// Variables that do not declare it still drop the row.
  std::string catch_all = "Other";
  /// At most this many per-row diagnostics are kept in Dataset::warnings.
  std::size_t max_row_warnings = 20;
};

/// Reads a header row followed by records. Columns not named by the schema
/// are ignored; column order is free.
inline Dataset ingest_records(std::istream& in, SchemaPtr schema,
                              const IngestOptions& options = {}) {
  Dataset ds(schema);
  const CategoricalSchema& s = *schema;
  CsvReader reader(in);
  std::vector<std::string> fields;

  bool have_header = false;
  while (reader.next(fields)) {
    if (is_blank_record(fields)) continue;
    have_header = true;
    break;
  }
  if (!have_header) throw InputError("records: empty input (no header row)");

  auto column_of = [&](const std::string& name) -> std::size_t {
    for (std::size_t c = 0; c < fields.size(); ++c)
      if (fields[c] == name) return c;
    throw InputError("records: missing required column '" + name + "'");
  };
  const std::size_t outcome_col = column_of(s.outcome_name);
  std::vector<std::size_t> var_cols;
  for (const auto& v : s.variables) var_cols.push_back(column_of(v.name));
  const std::size_t width = fields.size();

  std::vector<std::optional<std::uint32_t>> catch_all(s.variables.size());
  if (options.policy == UnknownPolicy::MapToCategory)
    for (std::size_t v = 0; v < s.variables.size(); ++v)
      if (auto idx = s.variables[v].find(options.catch_all))
        catch_all[v] = static_cast<std::uint32_t>(*idx);

  std::size_t row_warnings = 0;
  auto drop = [&](const std::string& why) {
    if (options.policy == UnknownPolicy::Reject)
      throw InputError("records: line " + std::to_string(reader.line()) + ": " + why);
    ++ds.dropped_count;
    if (row_warnings++ < options.max_row_warnings)
      ds.warnings.push_back("line " + std::to_string(reader.line()) + ": " + why);
  };

  std::vector<std::uint32_t> codes(s.variables.size());
  while (reader.next(fields)) {
    if (is_blank_record(fields) && width != 1) continue;
    if (fields.size() != width) {
      drop("expected " + std::to_string(width) + " fields, found " +
           std::to_string(fields.size()));
      continue;
    }
    auto sev = s.outcome_index(fields[outcome_col]);
    if (!sev) {
      drop("column '" + s.outcome_name + "': unknown class '" +
           fields[outcome_col] + "'");
      continue;
    }
    bool ok = true;
    for (std::size_t v = 0; v < s.variables.size() && ok; ++v) {
      const std::string& label = fields[var_cols[v]];
      if (auto idx = s.variables[v].find(label)) {
        codes[v] = static_cast<std::uint32_t>(*idx);
      } else if (catch_all[v]) {
        codes[v] = *catch_all[v];
      } else {
        drop("column '" + s.variables[v].name + "': unknown category '" + label +
             "'");
        ok = false;
      }
    }
    if (ok) ds.add_record(static_cast<int>(*sev), codes);
  }
  if (row_warnings > options.max_row_warnings)
    ds.warnings.push_back(std::to_string(row_warnings - options.max_row_warnings) +
                          " further rows dropped");
  if (ds.empty()) ds.warnings.push_back("records: no data rows");
  return ds;
}

inline void write_records(std::ostream& out, const Dataset& ds) {
  const auto& s = ds.schema();
  std::vector<std::string> row{s.outcome_name};
  for (const auto& v : s.variables) row.push_back(v.name);
  write_csv_row(out, row);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    row[0] = s.outcome[static_cast<std::size_t>(ds.severity(i))];
    for (std::size_t v = 0; v < s.variables.size(); ++v)
      row[v + 1] = s.variables[v].categories[ds.category(i, v)];
    write_csv_row(out, row);
  }
}

// Category-by-severity counts for one variable.
struct CrossTab {
  std::string variable;
  std::vector<std::string> row_labels;
  std::vector<std::string> class_labels;
  std::vector<std::vector<std::size_t>> counts;  // [category][class]

  std::size_t row_total(std::size_t r) const {
    std::size_t t = 0;
    for (auto c : counts[r]) t += c;
    return t;
  }
  std::size_t class_total(std::size_t j) const {
    std::size_t t = 0;
    for (const auto& row : counts) t += row[j];
    return t;
  }
  std::size_t total() const {
    std::size_t t = 0;
    for (std::size_t r = 0; r < counts.size(); ++r) t += row_total(r);
    return t;
  }
  /// Share of row r falling in class j, in percent; 0 for an empty row.
  double row_pct(std::size_t r, std::size_t j) const {
    auto t = row_total(r);
    return t ? 100.0 * static_cast<double>(counts[r][j]) / static_cast<double>(t)
             : 0.0;
  }
  /// Share of all records falling in category r, in percent.
  double share_pct(std::size_t r) const {
    auto t = total();
    return t ? 100.0 * static_cast<double>(row_total(r)) / static_cast<double>(t)
             : 0.0;
  }
  double class_pct(std::size_t j) const {
    auto t = total();
    return t ? 100.0 * static_cast<double>(class_total(j)) / static_cast<double>(t)
             : 0.0;
  }
};

inline CrossTab crosstab(const Dataset& ds, std::string_view variable) {
  const auto& s = ds.schema();
  auto v = s.variable_index(variable);
  if (!v) throw InputError("crosstab: unknown variable '" + std::string(variable) + "'");
  CrossTab t;
  t.variable = s.variables[*v].name;
  t.row_labels = s.variables[*v].categories;
  t.class_labels = s.outcome;
  t.counts.assign(t.row_labels.size(), std::vector<std::size_t>(s.num_classes(), 0));
  for (std::size_t i = 0; i < ds.size(); ++i)
    ++t.counts[ds.category(i, *v)][static_cast<std::size_t>(ds.severity(i))];
  return t;
}

}  // namespace ordsev

#endif  // ORDSEV_DATASET_HPP
