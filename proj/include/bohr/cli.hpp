#pragma once

#include "bohr/json_io.hpp"

#include <string>
#include <vector>

namespace bohr {

/// Exit codes: 0 computed or verified, 1 falsified (the report carries a
/// witness), 2 input error (the report is {"error": {...}}).
struct CommandResult {
    int exit_code = 0;
    Json report;
    /// Help or usage text; when set, printed instead of the report.
    std::string text;
};

/// Runs one command; args exclude the program name, e.g.
/// {"inner", "chi(2)", "chi(2)"}. Never throws.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace bohr
