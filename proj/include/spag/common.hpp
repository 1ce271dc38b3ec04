#ifndef SPAG_COMMON_HPP
#define SPAG_COMMON_HPP

#include <stdexcept>
#include <string>

namespace spag {

// Invalid arguments or malformed configuration. CLI maps these to exit code 2.
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed input data; carries the 1-based line number of the offending line.
struct parse_error : std::runtime_error {
  parse_error(const std::string& msg, long line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_number(line) {}
  long line_number;
};

// Iterative procedure failed to reach its tolerance. CLI maps to exit code 3.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct diverged_error : numerical_error {
  using numerical_error::numerical_error;
};

}  // namespace spag

#endif
