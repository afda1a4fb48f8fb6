/// @file
/// Command-line entry point, usable in-process for tests.
#pragma once

#include <string>
#include <vector>

namespace iradic {

/// Exit codes: 0 success, 1 model errors (findings, parse, reference or
/// domain errors), 2 usage or I/O errors, 3 resource limit reached.
struct CommandOutcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one subcommand. `args` excludes the program name.
/// The environment variable IRADIC_MAX_SETS caps intermediate cut sets.
CommandOutcome run_command(const std::vector<std::string>& args);

}  // namespace iradic
