#ifndef PFLR_CLI_HPP
#define PFLR_CLI_HPP

#include <string>
#include <vector>

namespace pflr::cli {

/// Runs the command-line interface. Exit codes: 0 success, 2 usage or
/// configuration error, 3 data error, 4 numerical failure.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args without program name

}  // namespace pflr::cli

#endif  // PFLR_CLI_HPP
