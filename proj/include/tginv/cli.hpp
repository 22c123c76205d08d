#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tginv/tensor.hpp"

namespace tginv::cli {

/// Exit codes of run_command.
enum Exit : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Runs `tginv <args...>` (args excludes the program name). Reports go to `out` unless
/// --output is given; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "3+2i", "-i", "1e-3", "2.5-0.5i".
Complex parse_complex(const std::string& text);

/// Comma-separated list of complex literals.
VectorXc parse_complex_list(const std::string& text);

/// Removes the "timestamp" field so reports can be compared byte for byte.
std::string strip_timestamp(const std::string& report);

}  // namespace tginv::cli
