#ifndef ORDSEV_TOOLS_CLI_HPP
#define ORDSEV_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ordsev::tools {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs `ordsev <subcommand> ...`; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordsev::tools

#endif  // ORDSEV_TOOLS_CLI_HPP
