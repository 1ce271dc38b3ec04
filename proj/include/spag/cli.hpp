#ifndef SPAG_CLI_HPP
#define SPAG_CLI_HPP

#include <string>
#include <vector>

namespace spag {

// Entry point behind the `spag` binary; exposed so tests can drive the CLI
// in-process. Exit codes: 0 success, 2 usage/config error, 3 numerical
// failure.
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args);

}  // namespace spag

#endif
