#pragma once

#include <istream>
#include <ostream>
#include <vector>

namespace qwle {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitCaveat = 2,  ///< result produced, but with a statistical caveat
};

/**
 * One numeric column; blank lines are skipped and a non-numeric first line is
 * taken as a header. Throws InputError on anything else.
 */
std::vector<double> read_column(std::istream& in);

/// Entry point of `qwle <estimate|simulate|mc|verify|profile> ...`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwle
