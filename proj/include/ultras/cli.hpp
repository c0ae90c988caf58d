#ifndef ULTRAS_CLI_HPP
#define ULTRAS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ultras::cli {

/// Runs the workbench command line. Exit codes: 0 success (or 'equivalent'),
/// 1 distinguished, 2 usage or input error, 3 state budget exceeded.
/// ULTRAS_MAX_STATES overrides the default exploration budget; --max-states
/// overrides both.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ultras::cli

#endif
