#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zdense::cli {

/// Runs the command line. Exit codes: decide returns 0/1/2 for
/// Exists/NotExists/Unknown; verify returns 0 when every check passes and 1
/// otherwise; any error returns 3.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(const std::string& data);

}  // namespace zdense::cli
