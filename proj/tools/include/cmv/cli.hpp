#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmv {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,            ///< success, or AllNonnegative
  kExitViolations = 1,    ///< ViolationsFound, or a failed expected-pass check
  kExitParseError = 2,    ///< malformed command line, number or function spec
  kExitDomainError = 3,   ///< argument outside a function's domain, or unusable output path
  kExitInconclusive = 4,  ///< Inconclusive verdict or unreachable accuracy
};

/// Runs `cmverify` with `args` (program name excluded). Reports go to the
/// --out file when given, otherwise to `out`; summaries go to `out` when a
/// file was written and to `err` otherwise, so `out` stays machine-readable.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmv
