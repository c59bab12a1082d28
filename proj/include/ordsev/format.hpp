#ifndef ORDSEV_FORMAT_HPP
#define ORDSEV_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordsev/contingency.hpp"
#include "ordsev/csv.hpp"
#include "ordsev/dataset.hpp"
#include "ordsev/error.hpp"
#include "ordsev/inference.hpp"
#include "ordsev/margins.hpp"

namespace ordsev {

enum class Format { Csv, Json, Markdown };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "md" || s == "markdown") return Format::Markdown;
  throw InputError("unknown output format '" + s + "' (expected csv, json or md)");
}

inline const char* extension(Format f) {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Markdown: return "md";
  }
  return "txt";
}

/// Shortest decimal text that parses back to exactly `v`.
inline std::string format_exact(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

/// Six significant digits, the precision of human-facing tables.
inline std::string format_human(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string format_p_value(double p) {
  if (p < 1e-4) return "< 0.0001";
  return format_human(p);
}

using Cell = std::variant<std::string, double, long long>;

// A titled rectangular table that renders to any output format.
struct TextTable {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;  // markdown footnotes only
};

namespace detail {

inline std::string cell_text(const Cell& c, bool human) {
  if (auto s = std::get_if<std::string>(&c)) return *s;
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  double d = std::get<double>(c);
  return human ? format_human(d) : format_exact(d);
}

inline std::string md_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

}  // namespace detail

inline std::string render_csv(const TextTable& t) {
  std::ostringstream out;
  write_csv_row(out, t.header);
  std::vector<std::string> row;
  for (const auto& r : t.rows) {
    row.clear();
    for (const auto& c : r) row.push_back(detail::cell_text(c, false));
    write_csv_row(out, row);
  }
  return out.str();
}

inline std::string render_markdown(const TextTable& t) {
  std::ostringstream out;
  if (!t.title.empty()) out << "### " << t.title << "\n\n";
  out << '|';
  for (const auto& h : t.header) out << ' ' << detail::md_escape(h) << " |";
  out << "\n|";
  for (std::size_t i = 0; i < t.header.size(); ++i)
    out << (i == 0 ? " --- |" : " ---: |");
  out << '\n';
  for (const auto& r : t.rows) {
    out << '|';
    for (const auto& c : r) out << ' ' << detail::md_escape(detail::cell_text(c, true)) << " |";
    out << '\n';
  }
  if (!t.notes.empty()) {
    out << '\n';
    for (const auto& n : t.notes) out << n << "  \n";
  }
  return out.str();
}

inline nlohmann::ordered_json table_json(const TextTable& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < r.size() && i < t.header.size(); ++i)
      std::visit([&](const auto& v) { obj[t.header[i]] = v; }, r[i]);
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json j;
  j["title"] = t.title;
  j["rows"] = std::move(rows);
  return j;
}

/// Renders one or more tables. CSV output separates tables with a blank
/// line; JSON emits an array of {title, rows}.
inline std::string render(const std::vector<TextTable>& tables, Format f) {
  std::string out;
  switch (f) {
    case Format::Csv:
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) out += '\n';
        out += render_csv(tables[i]);
      }
      break;
    case Format::Markdown:
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) out += '\n';
        out += render_markdown(tables[i]);
      }
      break;
    case Format::Json: {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& t : tables) j.push_back(table_json(t));
      out = j.dump(2) + "\n";
      break;
    }
  }
  return out;
}

// ---- module tables ----

/// Counts and row percentages per category, with a leading Total row.
inline TextTable crosstab_table(const CrossTab& ct) {
  TextTable t;
  t.title = ct.variable + " by severity";
  t.header = {"Category"};
  for (const auto& c : ct.class_labels) {
    t.header.push_back(c + " count");
    t.header.push_back(c + " %");
  }
  t.header.push_back("Total count");
  t.header.push_back("Total %");
  {
    std::vector<Cell> row{std::string("Total")};
    for (std::size_t j = 0; j < ct.class_labels.size(); ++j) {
      row.emplace_back(static_cast<long long>(ct.class_total(j)));
      row.emplace_back(ct.class_pct(j));
    }
    row.emplace_back(static_cast<long long>(ct.total()));
    row.emplace_back(ct.total() ? 100.0 : 0.0);
    t.rows.push_back(std::move(row));
  }
  for (std::size_t r = 0; r < ct.row_labels.size(); ++r) {
    std::vector<Cell> row{ct.row_labels[r]};
    for (std::size_t j = 0; j < ct.class_labels.size(); ++j) {
      row.emplace_back(static_cast<long long>(ct.counts[r][j]));
      row.emplace_back(ct.row_pct(r, j));
    }
    row.emplace_back(static_cast<long long>(ct.row_total(r)));
    row.emplace_back(ct.share_pct(r));
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Long-format cells (observed, expected, residual, frequency %) plus a
/// one-row summary.
inline std::vector<TextTable> contingency_tables(const ContingencyResult& res) {
  const auto& o = res.observed;
  TextTable cells;
  cells.title = "Pearson chi-square: " + o.row_variable + " x " + o.col_variable;
  cells.header = {o.row_variable.empty() ? "row" : o.row_variable,
                  o.col_variable.empty() ? "column" : o.col_variable,
                  "observed", "expected", "residual", "frequency %"};
  for (Eigen::Index r = 0; r < o.counts.rows(); ++r)
    for (Eigen::Index c = 0; c < o.counts.cols(); ++c)
      cells.rows.push_back({o.row_labels[static_cast<std::size_t>(r)],
                            o.col_labels[static_cast<std::size_t>(c)],
                            static_cast<long long>(std::llround(o.counts(r, c))),
                            res.expected(r, c), res.residuals(r, c),
                            res.cell_frequency_pct(r, c)});
  cells.notes = {"Residuals are (observed - expected) / sqrt(expected)."};
  for (const auto& w : res.warnings) cells.notes.push_back("Warning: " + w);

  TextTable summary;
  summary.title = "Test statistic";
  summary.header = {"chi_square", "df", "p_value"};
  summary.rows.push_back({res.chi_square, static_cast<long long>(res.df), res.p_value});
  summary.notes = {"p " + std::string(res.p_value < 1e-4 ? "" : "= ") +
                   format_p_value(res.p_value)};
  return {cells, summary};
}

inline std::vector<TextTable> report_tables(const FitReport& rep) {
  TextTable coef;
  coef.title = "Estimation results of the ordered logit model";
  coef.header = {"Variable", "Category", "Estimated Coefficient", "Significance",
                 "Standard Error", "t statistics"};
  for (const auto& r : rep.rows)
    coef.rows.push_back({r.group, r.label, r.estimate, std::string(stars(r.significance)),
                         r.standard_error, r.t_statistic});
  coef.notes = {"\\* 90% significance level, \\*\\* 95% significance level, "
                "\\*\\*\\* 99% significance level"};

  TextTable fit;
  fit.title = "Goodness of fit";
  fit.header = {"observations", "log_likelihood", "null_log_likelihood", "lr_chi_square",
                "lr_df", "lr_p_value", "mcfadden_rho2", "iterations", "converged"};
  fit.rows.push_back({static_cast<long long>(rep.num_observations), rep.log_likelihood,
                      rep.null_log_likelihood, rep.lr.chi_square,
                      static_cast<long long>(rep.lr.df), rep.lr.p_value, rep.mcfadden_rho2,
                      static_cast<long long>(rep.iterations),
                      std::string(rep.converged ? "true" : "false")});
  fit.notes = {"LR chi-square = " + format_human(rep.lr.chi_square) +
               ", df = " + std::to_string(rep.lr.df) + ", p " +
               (rep.lr.p_value < 1e-4 ? "" : "= ") + format_p_value(rep.lr.p_value) +
               "; McFadden rho^2 = " + format_human(rep.mcfadden_rho2)};
  return {coef, fit};
}

inline TextTable margins_text_table(const MarginalEffectsTable& m) {
  TextTable t;
  t.title = "Marginal effects of estimated coefficients";
  t.header = {"Variable", "Category"};
  const std::size_t classes = m.rows.empty() ? m.class_labels.size()
                                             : static_cast<std::size_t>(m.rows[0].effects.size());
  for (std::size_t j = 0; j < classes; ++j)
    t.header.push_back(j < m.class_labels.size() ? m.class_labels[j]
                                                 : "class " + std::to_string(j + 1));
  t.header.push_back("Row sum");
  t.header.push_back("Coefficient");
  for (const auto& r : m.rows) {
    std::vector<Cell> row{r.variable, r.category};
    for (Eigen::Index j = 0; j < r.effects.size(); ++j) row.emplace_back(r.effects[j]);
    row.emplace_back(r.row_sum());
    row.emplace_back(r.coefficient);
    t.rows.push_back(std::move(row));
  }
  t.notes = {"Average discrete change from the variable's reference group to the "
             "category, averaged over the sample."};
  return t;
}

}  // namespace ordsev

#endif  // ORDSEV_FORMAT_HPP
