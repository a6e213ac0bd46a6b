#pragma once

#include <iosfwd>

namespace fano::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInvalidInput = 2,
  kExitUndecided = 3,
};

/// Entry point of the fanodeg tool. Everything is written to `out` / `err`
/// so the command can be driven in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fano::cli
