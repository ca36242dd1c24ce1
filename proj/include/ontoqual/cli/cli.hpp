#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ontoqual::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,       // parse errors, failed CQ entries, I/O errors
  kEmptyOntology = 2,
  kUnsupported = 3,   // query uses a construct outside the supported subset
  kUsage = 64,        // bad flags or arguments
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace ontoqual::cli
