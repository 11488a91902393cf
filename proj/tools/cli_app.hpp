#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace micz::cli {

inline constexpr const char* kSchemaVersion = "1";

/// Runs one command line (args excludes the program name). Returns the exit
/// status: 0 ok, 2 validation, 3 numerical, 4 internal consistency.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace micz::cli
