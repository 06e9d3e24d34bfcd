#ifndef BIL_CLI_HPP
#define BIL_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace bil {

// Exit codes of run().
enum ExitCode : int {
  exit_ok = 0,
  exit_false = 1,       // check: formula false; bisim: no bi-asimulation
  exit_usage = 2,
  exit_invalid = 3,     // unreadable or invalid input
  exit_suite_fail = 4,  // verify failures, or a mismatch found by unravel --check-rank
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bil

#endif  // BIL_CLI_HPP
