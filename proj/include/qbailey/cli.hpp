#pragma once

#include <iosfwd>

namespace qbailey {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  exit_pass = 0,
  exit_fail = 1,
  exit_usage = 2,
  exit_insufficient_order = 3,
};

/// Entry point shared by the qbailey executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qbailey
