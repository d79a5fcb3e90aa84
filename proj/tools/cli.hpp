// SPDX-License-Identifier: MIT
/**
 * @file cli.hpp
 * @brief Command-line front end: params, solve-invariant, verify, fd-solve, simulate, symmetry
 *
 * Exit codes: 0 success, 1 validation failure or failed check, 2 numerical failure.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rapm::cli {

/// Runs one command; argv[0] is the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rapm::cli
