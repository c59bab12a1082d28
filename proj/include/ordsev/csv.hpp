#ifndef ORDSEV_CSV_HPP
#define ORDSEV_CSV_HPP

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ordsev/error.hpp"

namespace ordsev {

// Streaming RFC 4180 reader. Accepts CRLF or LF line endings, quoted fields
// with embedded commas, doubled quotes and line breaks, and strips a UTF-8
// byte-order mark from the first field.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Reads the next record into `fields`. Returns false at end of input.
  /// A physically blank line yields a record with a single empty field.
  bool next(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    if (c == std::char_traits<char>::eof()) return false;
    ++line_;
    record_line_ = line_;
    std::string field;
    bool quoted = false;
    bool after_quote = false;
    for (;; c = in_.get()) {
      if (c == std::char_traits<char>::eof()) {
        if (quoted)
          throw InputError("csv: unterminated quoted field starting on line " +
                           std::to_string(record_line_));
        break;
      }
      char ch = static_cast<char>(c);
      if (quoted) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            quoted = false;
            after_quote = true;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
        continue;
      }
      if (ch == ',') {
        fields.push_back(std::move(field));
        field.clear();
        after_quote = false;
      } else if (ch == '\r') {
        if (in_.peek() == '\n') continue;
        break;
      } else if (ch == '\n') {
        break;
      } else if (ch == '"' && field.empty() && !after_quote) {
        quoted = true;
      } else {
        if (after_quote)
          throw InputError("csv: text after closing quote on line " +
                           std::to_string(line_));
        field.push_back(ch);
      }
    }
    fields.push_back(std::move(field));
    if (first_ && !fields.empty() && fields[0].rfind("\xEF\xBB\xBF", 0) == 0)
      fields[0].erase(0, 3);
    first_ = false;
    return true;
  }

  /// Physical line on which the last returned record started (1-based).
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
  bool first_ = true;
};

inline bool is_blank_record(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields[0].empty();
}

inline std::string csv_escape(std::string_view field) {
  bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos ||
               (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

}  // namespace ordsev

#endif  // ORDSEV_CSV_HPP
