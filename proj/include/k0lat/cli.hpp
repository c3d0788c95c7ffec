#ifndef K0LAT_CLI_HPP
#define K0LAT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "k0lat/error.hpp"

namespace k0lat::cli {

inline constexpr const char* kVersion = "0.1.0";

/* 1 for negative verdicts, 2 for invalid input, 3 for resource cutoffs. */
int exit_code(ErrorKind kind);

/* Runs one command line (without the program name); the report goes to
 * out, diagnostics to err.  Returns the process exit code. */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace k0lat::cli

#endif
