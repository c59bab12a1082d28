#ifndef ORDSEV_TOOLS_ARCHIVE_HPP
#define ORDSEV_TOOLS_ARCHIVE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "ordsev/design.hpp"
#include "ordsev/ologit.hpp"
#include "ordsev/schema.hpp"

namespace ordsev::tools {

std::string sha256_hex(std::string_view data);

/// Hash of the canonical JSON serialization of a schema.
std::string schema_hash(const CategoricalSchema& schema);

/// Everything `margins` needs to reuse a fit without refitting.
struct FitArchive {
  std::string schema_sha256;
  CategoricalSchema schema;
  std::vector<std::string> columns;
  OrderedLogitFit fit;
  FitOptions options;
};

/// Full-precision JSON; identical inputs give identical bytes.
std::string serialize_archive(const FitArchive& archive);
FitArchive parse_archive(std::string_view text);

}  // namespace ordsev::tools

#endif  // ORDSEV_TOOLS_ARCHIVE_HPP
