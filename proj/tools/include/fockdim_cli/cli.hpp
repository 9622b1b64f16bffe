#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fockdim::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  /// Violated or Diverges where a certificate was requested, or a failed example.
  kExitNegative = 1,
  kExitError = 2,
  kExitInconclusive = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and help for failed parses to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fockdim::cli
