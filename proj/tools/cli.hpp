#ifndef ODP_TOOLS_CLI_HPP
#define ODP_TOOLS_CLI_HPP

#include <iosfwd>

namespace odp {

enum ExitCode {
  kExitOk = 0,
  kExitError = 1,  // I/O and other runtime failures
  kExitParse = 2,  // bad arguments, malformed or invalid input
  kExitLimit = 3,
  kExitInfeasible = 4,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace odp

#endif  // ODP_TOOLS_CLI_HPP
