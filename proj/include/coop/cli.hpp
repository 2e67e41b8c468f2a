#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coop {

enum exit_code : int {
  exit_holds = 0,
  exit_violated = 1,
  exit_unknown = 2,
  exit_usage = 64,
  exit_invalid_input = 65,
  exit_internal = 70,
};

/// Runs one `coopverify` command. `args` excludes the program name. Errors
/// are reported on `err` and mapped to exit codes; nothing escapes.
int cli_main(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}  // namespace coop
