#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lmprng::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kParse = 3,
  kFraming = 4,
  kIo = 5,
};

/// Runs one command line (args excludes the program name). Standard streams
/// are used for "-" paths; `out`/`err` receive stdout/stderr text.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lmprng::cli
