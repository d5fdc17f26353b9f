#ifndef PQHARM_CLI_HPP
#define PQHARM_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace pqharm::cli {

/// Parses and dispatches one invocation. `args` excludes the program name.
/// Exit status: 0 success, 1 verification failure, 2 input or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pqharm::cli

#endif  // PQHARM_CLI_HPP
