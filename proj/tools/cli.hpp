#ifndef WSN_CLI_HPP
#define WSN_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace wsn {

/// Runs one CLI invocation. `args` excludes the program name. Returns the
/// process exit code: 0 success, 1 domain error, 2 usage error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace wsn

#endif // WSN_CLI_HPP
