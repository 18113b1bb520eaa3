#pragma once

#include <string>
#include <vector>

#include "json_io.hpp"

namespace ballistic {

// Runs one subcommand. `input` is the parsed document (null when the command
// takes none); `options` holds flags such as "seed", "check" or "tol".
// Reports always carry "residuals" and "checks_passed".
io::json run_command(const std::string& name, const io::json& input, const io::json& options);

const std::vector<std::string>& command_names();
bool command_needs_input(const std::string& name);

}  // namespace ballistic
